//! Stacks in series.
//!
//! A machine is an ordered list of stacks between the input (on the right)
//! and the output (on the left). Entries flow one way: input into the first
//! stack, each stack into the next, and the last stack into the output. A
//! move is named by the index of the boundary it crosses, so a `k`-stage
//! machine has moves `0..=k`:
//!
//! ```text
//!   output <-k- [stage k-1] <- ... <-1- [stage 0] <-0- input
//! ```
//!
//! Only the forced output is ever legal: the last stack may emit a value
//! only when it equals the next value the identity needs. Any other output
//! makes sorting impossible, so nothing is lost by refusing it.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StackRestriction {
    /// Entries decrease read top to bottom: a push must exceed the top.
    Decreasing,
    /// Entries increase read top to bottom: a push must be below the top.
    Increasing,
    Unrestricted,
}

impl StackRestriction {
    /// Whether `value` may be pushed onto a stack whose top is `top`.
    /// An empty stack accepts anything.
    pub fn admits(self, top: Option<u32>, value: u32) -> bool {
        match (self, top) {
            (_, None) | (StackRestriction::Unrestricted, _) => true,
            (StackRestriction::Decreasing, Some(t)) => value > t,
            (StackRestriction::Increasing, Some(t)) => value < t,
        }
    }

    /// Whether a stack listed bottom to top satisfies the restriction.
    pub fn holds_for(self, bottom_to_top: &[u32]) -> bool {
        bottom_to_top
            .windows(2)
            .all(|w| self.admits(Some(w[0]), w[1]))
    }

    pub fn letter(self) -> char {
        match self {
            StackRestriction::Decreasing => 'D',
            StackRestriction::Increasing => 'I',
            StackRestriction::Unrestricted => 'U',
        }
    }

    fn name(self) -> &'static str {
        match self {
            StackRestriction::Decreasing => "decreasing",
            StackRestriction::Increasing => "increasing",
            StackRestriction::Unrestricted => "unrestricted",
        }
    }
}

/// Stack restrictions listed from the input side to the output side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MachineConfig {
    stages: Vec<StackRestriction>,
}

impl MachineConfig {
    pub fn new(stages: Vec<StackRestriction>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::NoStages);
        }
        Ok(MachineConfig { stages })
    }

    /// A decreasing stack fed by the input, followed by an increasing stack.
    pub fn di() -> Self {
        MachineConfig {
            stages: vec![StackRestriction::Decreasing, StackRestriction::Increasing],
        }
    }

    pub fn single(restriction: StackRestriction) -> Self {
        MachineConfig {
            stages: vec![restriction],
        }
    }

    pub fn stages(&self) -> &[StackRestriction] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn is_di(&self) -> bool {
        *self == MachineConfig::di()
    }

    /// Index of the move that sends the top of the last stack to the output.
    pub fn output_move(&self) -> Move {
        Move(self.stages.len())
    }
}

impl Default for MachineConfig {
    fn default() -> Self {
        MachineConfig::di()
    }
}

impl fmt::Display for MachineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.stages
            .iter()
            .try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

/// Parses strings over `D`, `I`, `U` such as `DI`, `DDI` or `DIDI`.
impl FromStr for MachineConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let stages = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'D' => Ok(StackRestriction::Decreasing),
                'I' => Ok(StackRestriction::Increasing),
                'U' => Ok(StackRestriction::Unrestricted),
                other => Err(Error::Parse {
                    what: "machine",
                    detail: format!("unknown stack kind {other:?}; expected D, I or U"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        MachineConfig::new(stages).map_err(|_| Error::Parse {
            what: "machine",
            detail: "empty machine description".into(),
        })
    }
}

/// A transfer across one boundary of the machine; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move(pub usize);

impl Move {
    pub fn stage_index(self) -> usize {
        self.0
    }

    /// Token for this move. The DI machine uses `in`, `xfer` and `out`;
    /// every other machine uses `s0..sk`.
    pub fn token(self, config: &MachineConfig) -> String {
        if config.is_di() {
            match self.0 {
                0 => return "in".into(),
                1 => return "xfer".into(),
                2 => return "out".into(),
                _ => {}
            }
        }
        format!("s{}", self.0)
    }

    pub fn parse_token(token: &str, config: &MachineConfig) -> Result<Move> {
        let parsed = match token {
            "in" if config.is_di() => Some(0),
            "xfer" if config.is_di() => Some(1),
            "out" if config.is_di() => Some(2),
            _ => token
                .strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok()),
        };
        match parsed {
            Some(idx) if idx <= config.len() => Ok(Move(idx)),
            _ => Err(Error::Parse {
                what: "move",
                detail: format!("{token:?} is not a move of machine {config}"),
            }),
        }
    }
}

/// Why a move cannot be made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveViolation {
    NoSuchBoundary {
        index: usize,
        stages: usize,
    },
    EmptyInput,
    EmptyStack {
        stage: usize,
    },
    Restriction {
        kind: StackRestriction,
        value: u32,
        top: u32,
    },
    NotNextOutput {
        value: u32,
        expected: u32,
    },
}

impl fmt::Display for MoveViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveViolation::NoSuchBoundary { index, stages } => write!(
                f,
                "move s{index} does not exist on a {stages}-stage machine"
            ),
            MoveViolation::EmptyInput => f.write_str("input is empty"),
            MoveViolation::EmptyStack { stage } => write!(f, "stack {stage} is empty"),
            MoveViolation::Restriction { kind, value, top } => {
                write!(f, "{}-stack violation: {value} over {top}", kind.name())
            }
            MoveViolation::NotNextOutput { value, expected } => write!(
                f,
                "output violation: {value} is not the next output {expected}"
            ),
        }
    }
}

/// A snapshot of a run: what is left of the input, the contents of every
/// stack (bottom to top) and the next value the output needs.
#[derive(Debug, Clone)]
pub struct MachineState {
    input: Vec<u32>,
    consumed: usize,
    stacks: Vec<Vec<u32>>,
    next_output: u32,
}

impl MachineState {
    pub fn initial(perm: &Permutation, config: &MachineConfig) -> Self {
        MachineState {
            input: perm.values().to_vec(),
            consumed: 0,
            stacks: vec![Vec::new(); config.len()],
            next_output: 1,
        }
    }

    /// An arbitrary snapshot. No invariant is checked; see
    /// [`MachineState::violated_restriction`] and
    /// [`MachineState::conserves_values`].
    pub fn from_parts(remaining_input: Vec<u32>, stacks: Vec<Vec<u32>>, next_output: u32) -> Self {
        MachineState {
            input: remaining_input,
            consumed: 0,
            stacks,
            next_output,
        }
    }

    pub fn remaining_input(&self) -> &[u32] {
        &self.input[self.consumed..]
    }

    pub fn next_input(&self) -> Option<u32> {
        self.remaining_input().first().copied()
    }

    /// Stack contents, bottom to top.
    pub fn stacks(&self) -> &[Vec<u32>] {
        &self.stacks
    }

    pub fn stack(&self, stage: usize) -> &[u32] {
        &self.stacks[stage]
    }

    pub fn top(&self, stage: usize) -> Option<u32> {
        self.stacks[stage].last().copied()
    }

    pub fn next_output(&self) -> u32 {
        self.next_output
    }

    pub fn stacks_empty(&self) -> bool {
        self.stacks.iter().all(Vec::is_empty)
    }

    /// Input consumed and every stack emptied.
    pub fn is_sorted(&self) -> bool {
        self.remaining_input().is_empty() && self.stacks_empty()
    }

    /// The first stage whose contents break its restriction, if any.
    pub fn violated_restriction(&self, config: &MachineConfig) -> Option<usize> {
        config
            .stages()
            .iter()
            .zip(&self.stacks)
            .position(|(r, s)| !r.holds_for(s))
    }

    /// Remaining input, stacks and emitted values `1..next_output` together
    /// hold `1..=n` exactly once.
    pub fn conserves_values(&self) -> bool {
        let mut values: Vec<u32> = self
            .remaining_input()
            .iter()
            .chain(self.stacks.iter().flatten())
            .copied()
            .chain(1..self.next_output)
            .collect();
        values.sort_unstable();
        values.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    fn check_stages(&self, config: &MachineConfig) -> Result<()> {
        if self.stacks.len() != config.len() {
            return Err(Error::StageMismatch {
                expected: config.len(),
                found: self.stacks.len(),
            });
        }
        Ok(())
    }

    /// The value `mv` would transfer, or why it cannot be made.
    fn check_move(&self, mv: Move, config: &MachineConfig) -> Result<u32, MoveViolation> {
        let k = config.len();
        let Move(idx) = mv;
        if idx > k {
            return Err(MoveViolation::NoSuchBoundary {
                index: idx,
                stages: k,
            });
        }
        let value = if idx == 0 {
            self.next_input().ok_or(MoveViolation::EmptyInput)?
        } else {
            self.top(idx - 1)
                .ok_or(MoveViolation::EmptyStack { stage: idx - 1 })?
        };
        if idx == k {
            if value != self.next_output {
                return Err(MoveViolation::NotNextOutput {
                    value,
                    expected: self.next_output,
                });
            }
        } else {
            let kind = config.stages()[idx];
            let top = self.top(idx);
            if !kind.admits(top, value) {
                return Err(MoveViolation::Restriction {
                    kind,
                    value,
                    top: top.expect("empty stacks admit everything"),
                });
            }
        }
        Ok(value)
    }

    /// Every legal move, in ascending boundary order.
    pub fn legal_moves(&self, config: &MachineConfig) -> Result<Vec<Move>> {
        self.check_stages(config)?;
        Ok((0..=config.len())
            .map(Move)
            .filter(|&mv| self.check_move(mv, config).is_ok())
            .collect())
    }

    pub fn is_legal(&self, mv: Move, config: &MachineConfig) -> bool {
        self.stacks.len() == config.len() && self.check_move(mv, config).is_ok()
    }

    /// Applies `mv` to this state and returns the value moved. The state is
    /// untouched on error.
    pub fn apply_in_place(&mut self, mv: Move, config: &MachineConfig) -> Result<u32> {
        self.check_stages(config)?;
        let value = self.check_move(mv, config).map_err(Error::IllegalMove)?;
        let Move(idx) = mv;
        if idx == 0 {
            self.consumed += 1;
        } else {
            self.stacks[idx - 1].pop();
        }
        if idx == config.len() {
            self.next_output += 1;
        } else {
            self.stacks[idx].push(value);
        }
        Ok(value)
    }

    pub fn apply_move(&self, mv: Move, config: &MachineConfig) -> Result<MachineState> {
        let mut next = self.clone();
        next.apply_in_place(mv, config)?;
        Ok(next)
    }
}

impl PartialEq for MachineState {
    fn eq(&self, other: &Self) -> bool {
        self.next_output == other.next_output
            && self.remaining_input() == other.remaining_input()
            && self.stacks == other.stacks
    }
}

impl Eq for MachineState {}

impl Hash for MachineState {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.remaining_input().hash(state);
        self.stacks.hash(state);
        self.next_output.hash(state);
    }
}

/// The move sequence of one run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Trace {
    moves: Vec<Move>,
}

impl Trace {
    pub fn new(moves: Vec<Move>) -> Self {
        Trace { moves }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    /// Whitespace-separated tokens, see [`Move::token`].
    pub fn to_text(&self, config: &MachineConfig) -> String {
        self.moves
            .iter()
            .map(|m| m.token(config))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str, config: &MachineConfig) -> Result<Trace> {
        text.split_whitespace()
            .map(|t| Move::parse_token(t, config))
            .collect::<Result<Vec<_>>>()
            .map(Trace::new)
    }
}

impl FromIterator<Move> for Trace {
    fn from_iter<T: IntoIterator<Item = Move>>(iter: T) -> Self {
        Trace::new(iter.into_iter().collect())
    }
}

/// Result of [`replay_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    pub state: MachineState,
    pub sorted: bool,
}

/// Runs `trace` from the initial state of `perm`, stopping at the first
/// illegal move.
pub fn replay_trace(perm: &Permutation, trace: &Trace, config: &MachineConfig) -> Result<Replay> {
    let mut state = MachineState::initial(perm, config);
    for (index, &mv) in trace.moves().iter().enumerate() {
        state.apply_in_place(mv, config).map_err(|e| match e {
            Error::IllegalMove(violation) => Error::Replay { index, violation },
            other => other,
        })?;
    }
    let sorted = state.is_sorted();
    Ok(Replay { state, sorted })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SORT_24513: &str = "in in in xfer xfer xfer in xfer out out in xfer out out out";

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn restrictions_on_empty_and_full_stacks() {
        use StackRestriction::*;
        assert!(Decreasing.admits(None, 1));
        assert!(Increasing.admits(None, 9));
        assert!(Decreasing.admits(Some(2), 4));
        assert!(!Decreasing.admits(Some(3), 1));
        assert!(Increasing.admits(Some(3), 1));
        assert!(!Increasing.admits(Some(3), 4));
        assert!(Unrestricted.admits(Some(3), 4));
        assert!(Decreasing.holds_for(&[2, 4, 5]));
        assert!(!Increasing.holds_for(&[2, 4, 5]));
        assert!(Increasing.holds_for(&[5, 4, 2, 1]));
    }

    #[test]
    fn machine_spec_parsing() {
        assert_eq!("DI".parse::<MachineConfig>().unwrap(), MachineConfig::di());
        assert_eq!("didi".parse::<MachineConfig>().unwrap().to_string(), "DIDI");
        assert!("".parse::<MachineConfig>().is_err());
        assert!("DX".parse::<MachineConfig>().is_err());
        assert_eq!(MachineConfig::new(vec![]), Err(Error::NoStages));
    }

    #[test]
    fn legal_moves_blocked_state() {
        let di = MachineConfig::di();
        let state = MachineState::from_parts(vec![4, 2], vec![vec![], vec![3]], 1);
        assert_eq!(state.legal_moves(&di).unwrap(), vec![Move(0)]);
    }

    #[test]
    fn legal_moves_full_d_empty_i() {
        let di = MachineConfig::di();
        let state = MachineState::from_parts(vec![], vec![vec![2, 4, 5], vec![]], 1);
        assert_eq!(state.legal_moves(&di).unwrap(), vec![Move(1)]);
    }

    #[test]
    fn legal_moves_nothing_to_move() {
        let di = MachineConfig::di();
        let state = MachineState::from_parts(vec![], vec![vec![], vec![]], 4);
        assert!(state.legal_moves(&di).unwrap().is_empty());
    }

    #[test]
    fn legal_moves_stage_mismatch() {
        let state = MachineState::from_parts(vec![1], vec![vec![]], 1);
        assert_eq!(
            state.legal_moves(&MachineConfig::di()),
            Err(Error::StageMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn apply_move_examples() {
        let di = MachineConfig::di();
        let before = MachineState::from_parts(vec![4, 5, 1, 3], vec![vec![2], vec![]], 1);
        let after = before.apply_move(Move(0), &di).unwrap();
        assert_eq!(
            after,
            MachineState::from_parts(vec![5, 1, 3], vec![vec![2, 4], vec![]], 1)
        );

        let last = MachineState::from_parts(vec![], vec![vec![], vec![1]], 1);
        let done = last.apply_move(Move(2), &di).unwrap();
        assert_eq!(
            done,
            MachineState::from_parts(vec![], vec![vec![], vec![]], 2)
        );

        let wrong = MachineState::from_parts(vec![], vec![vec![], vec![3]], 1);
        assert_eq!(
            wrong.apply_move(Move(2), &di),
            Err(Error::IllegalMove(MoveViolation::NotNextOutput {
                value: 3,
                expected: 1
            }))
        );
    }

    #[test]
    fn violation_messages_name_the_rule() {
        let di = MachineConfig::di();
        let state = MachineState::from_parts(vec![], vec![vec![4], vec![3]], 1);
        let err = state.apply_move(Move(1), &di).unwrap_err();
        assert_eq!(
            err.to_string(),
            "illegal move: increasing-stack violation: 4 over 3"
        );
        let err = state.apply_move(Move(3), &di).unwrap_err();
        assert!(err.to_string().contains("does not exist"));
        let err = state.apply_move(Move(0), &di).unwrap_err();
        assert_eq!(err.to_string(), "illegal move: input is empty");
    }

    #[test]
    fn replay_24513() {
        let di = MachineConfig::di();
        let trace = Trace::parse(SORT_24513, &di).unwrap();
        assert_eq!(trace.len(), 15);
        let replay = replay_trace(&p("24513"), &trace, &di).unwrap();
        assert!(replay.sorted);
        assert_eq!(replay.state.next_output(), 6);
        assert_eq!(trace.to_text(&di), SORT_24513);
    }

    #[test]
    fn replay_empty() {
        let replay = replay_trace(
            &Permutation::empty(),
            &Trace::default(),
            &MachineConfig::di(),
        )
        .unwrap();
        assert!(replay.sorted);
    }

    #[test]
    fn replay_reports_first_illegal_move() {
        let di = MachineConfig::di();
        let trace = Trace::parse("in in", &di).unwrap();
        let err = replay_trace(&p("312"), &trace, &di).unwrap_err();
        assert_eq!(
            err,
            Error::Replay {
                index: 1,
                violation: MoveViolation::Restriction {
                    kind: StackRestriction::Decreasing,
                    value: 1,
                    top: 3
                }
            }
        );
        assert_eq!(
            err.to_string(),
            "illegal move at index 1: decreasing-stack violation: 1 over 3"
        );
    }

    #[test]
    fn incomplete_replay_is_not_sorted() {
        let di = MachineConfig::di();
        let trace = Trace::parse("in xfer", &di).unwrap();
        let replay = replay_trace(&p("1"), &trace, &di).unwrap();
        assert!(!replay.sorted);
    }

    #[test]
    fn token_names() {
        let di = MachineConfig::di();
        let ddi: MachineConfig = "DDI".parse().unwrap();
        assert_eq!(
            Trace::parse("s0 s1 s2", &di).unwrap().to_text(&di),
            "in xfer out"
        );
        assert_eq!(
            Trace::parse("s0 s1 s2 s3", &ddi).unwrap().to_text(&ddi),
            "s0 s1 s2 s3"
        );
        assert!(Trace::parse("in", &ddi).is_err());
        assert!(Trace::parse("s3", &di).is_err());
        assert!(Trace::parse("push", &di).is_err());
    }

    #[test]
    fn conservation_check() {
        let state = MachineState::from_parts(vec![5, 1, 3], vec![vec![2, 4], vec![]], 1);
        assert!(state.conserves_values());
        let missing = MachineState::from_parts(vec![4, 2], vec![vec![], vec![3]], 1);
        assert!(!missing.conserves_values());
    }
}
