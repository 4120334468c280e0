//! Deterministic sorting on the DI machine.
//!
//! At every point the first applicable rule fires:
//!
//! 1. the top of I is the next output value: output it;
//! 2. D is nonempty and holds exactly the next `m` output values: move all
//!    `m` entries from D to I;
//! 3. the next input entry is below the top of I and above the top of D:
//!    push it onto D;
//! 4. D is nonempty: move its top to I.
//!
//! If no rule applies the run is stuck. Empty stacks impose no bound in
//! rule 3. Rule 2 can be switched off without changing which permutations
//! are sorted; it only flushes entries sooner.

use crate::error::Result;
use crate::machine::{MachineConfig, MachineState, Move, Trace};
use crate::permutation::Permutation;

const D: usize = 0;
const I: usize = 1;
const PUSH: Move = Move(0);
const TRANSFER: Move = Move(1);
const OUTPUT: Move = Move(2);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortOutcome {
    Sorted(Trace),
    /// No rule applies in `state`; `trace` holds the moves made so far.
    Stuck {
        state: MachineState,
        trace: Trace,
        reason: String,
    },
}

impl SortOutcome {
    pub fn is_sorted(&self) -> bool {
        matches!(self, SortOutcome::Sorted(_))
    }

    pub fn trace(&self) -> &Trace {
        match self {
            SortOutcome::Sorted(trace) | SortOutcome::Stuck { trace, .. } => trace,
        }
    }
}

/// The configuration in which a failed run halts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StuckDiagnosis {
    pub top_of_i: u32,
    pub next_input: u32,
    pub next_output: u32,
}

struct Run {
    config: MachineConfig,
    state: MachineState,
    trace: Trace,
}

impl Run {
    fn step(&mut self, mv: Move) -> Result<()> {
        self.state.apply_in_place(mv, &self.config)?;
        self.trace.push(mv);
        Ok(())
    }

    /// D holds exactly `next_output..next_output + m`.
    fn d_is_next_block(&self) -> bool {
        let d = self.state.stack(D);
        let next = self.state.next_output();
        match (d.first(), d.last()) {
            // D grows upward, so its bottom is its minimum.
            (Some(&low), Some(&high)) => low == next && high == next + d.len() as u32 - 1,
            _ => false,
        }
    }

    fn fits_between_stacks(&self, value: u32) -> bool {
        let below_i = self.state.top(I).is_none_or(|top| value < top);
        let above_d = self.state.top(D).is_none_or(|top| value > top);
        below_i && above_d
    }

    fn stuck(self, reason: String) -> SortOutcome {
        SortOutcome::Stuck {
            state: self.state,
            trace: self.trace,
            reason,
        }
    }
}

/// Runs the DI algorithm on `perm`; `use_step2` enables rule 2.
pub fn di_sort(perm: &Permutation, use_step2: bool) -> SortOutcome {
    let config = MachineConfig::di();
    let state = MachineState::initial(perm, &config);
    let mut run = Run {
        config,
        state,
        trace: Trace::new(Vec::with_capacity(3 * perm.len())),
    };
    let done = perm.len() as u32 + 1;

    while run.state.next_output() != done {
        let next = run.state.next_output();

        if run.state.top(I) == Some(next) {
            run.step(OUTPUT).expect("rule 1 outputs the forced value");
            continue;
        }

        if use_step2 && run.d_is_next_block() {
            for _ in 0..run.state.stack(D).len() {
                // Everything outside D is larger than D, including the top
                // of I, so each transfer is legal.
                run.step(TRANSFER).expect("rule 2 transfers are legal");
            }
            continue;
        }

        if let Some(value) = run.state.next_input() {
            if run.fits_between_stacks(value) {
                run.step(PUSH).expect("rule 3 respects D");
                continue;
            }
        }

        if !run.state.stack(D).is_empty() {
            if let Err(err) = run.step(TRANSFER) {
                return run.stuck(format!("rule 4 blocked: {err}"));
            }
            continue;
        }

        let reason = match (run.state.top(I), run.state.next_input()) {
            (Some(top), Some(input)) => format!(
                "D is empty, top of I is {top} but the next output is {next}, \
                 and the next input {input} cannot go below {top}"
            ),
            (top, input) => format!(
                "no rule applies (top of I: {top:?}, next input: {input:?}, next output: {next})"
            ),
        };
        return run.stuck(reason);
    }

    SortOutcome::Sorted(run.trace)
}

/// The blocking configuration of a stuck run, or `None` if it sorted.
///
/// A stuck DI run always has D empty, input left over, and the next input
/// entry above the top of I; this panics if that shape does not hold.
pub fn diagnose_stuck(outcome: &SortOutcome) -> Option<StuckDiagnosis> {
    let SortOutcome::Stuck { state, .. } = outcome else {
        return None;
    };
    assert!(
        state.stack(D).is_empty(),
        "stuck with D nonempty: {state:?}"
    );
    let next_input = state
        .next_input()
        .unwrap_or_else(|| panic!("stuck with the input exhausted: {state:?}"));
    let top_of_i = state
        .top(I)
        .unwrap_or_else(|| panic!("stuck with I empty: {state:?}"));
    assert!(
        next_input > top_of_i,
        "stuck with next input {next_input} below the top of I {top_of_i}"
    );
    Some(StuckDiagnosis {
        top_of_i,
        next_input,
        next_output: state.next_output(),
    })
}

/// Number of states after the start of the run (the final one included)
/// in which every stack is empty.
pub fn empty_stack_visits(
    perm: &Permutation,
    trace: &Trace,
    config: &MachineConfig,
) -> Result<usize> {
    let mut state = MachineState::initial(perm, config);
    let mut visits = 0;
    for &mv in trace.moves() {
        state.apply_in_place(mv, config)?;
        if state.stacks_empty() {
            visits += 1;
        }
    }
    Ok(visits)
}

/// [`empty_stack_visits`] along the DI algorithm's run (rule 2 enabled);
/// `None` when `perm` is not DI-sortable.
pub fn empty_stacks_statistic(perm: &Permutation) -> Option<usize> {
    match di_sort(perm, true) {
        SortOutcome::Sorted(trace) => Some(
            empty_stack_visits(perm, &trace, &MachineConfig::di())
                .expect("algorithm traces replay"),
        ),
        SortOutcome::Stuck { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::replay_trace;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn trace_text(outcome: &SortOutcome) -> String {
        outcome.trace().to_text(&MachineConfig::di())
    }

    #[test]
    fn trace_for_24513() {
        let outcome = di_sort(&p("24513"), true);
        assert!(outcome.is_sorted());
        assert_eq!(
            trace_text(&outcome),
            "in in in xfer xfer xfer in xfer out out in xfer out out out"
        );
    }

    #[test]
    fn identity_flushes_each_entry() {
        let outcome = di_sort(&p("123"), true);
        assert!(outcome.is_sorted());
        assert_eq!(trace_text(&outcome), "in xfer out in xfer out in xfer out");
    }

    #[test]
    fn basis_elements_get_stuck() {
        for (perm, top, input, output) in [("3142", 3, 4, 2), ("3241", 2, 4, 1)] {
            for step2 in [true, false] {
                let outcome = di_sort(&p(perm), step2);
                assert!(!outcome.is_sorted(), "{perm}");
                let diag = diagnose_stuck(&outcome).unwrap();
                assert_eq!((diag.top_of_i, diag.next_input), (top, input), "{perm}");
                assert_eq!(diag.next_output, output);
            }
        }
    }

    #[test]
    fn stuck_reason_mentions_the_block() {
        let SortOutcome::Stuck { reason, trace, .. } = di_sort(&p("3142"), true) else {
            panic!("3142 must not sort");
        };
        assert!(reason.contains("top of I is 3"), "{reason}");
        assert_eq!(trace.to_text(&MachineConfig::di()), "in xfer in xfer out");
    }

    #[test]
    fn sorted_outcomes_have_no_diagnosis() {
        assert_eq!(diagnose_stuck(&di_sort(&p("1"), true)), None);
        assert!(di_sort(&Permutation::empty(), true).trace().is_empty());
    }

    #[test]
    fn step2_off_still_sorts_24513() {
        let outcome = di_sort(&p("24513"), false);
        let trace = outcome.trace().clone();
        assert!(outcome.is_sorted());
        assert!(
            replay_trace(&p("24513"), &trace, &MachineConfig::di())
                .unwrap()
                .sorted
        );
    }

    #[test]
    fn empty_stack_statistic_examples() {
        assert_eq!(empty_stacks_statistic(&p("123")), Some(3));
        assert_eq!(empty_stacks_statistic(&p("24513")), Some(1));
        assert_eq!(empty_stacks_statistic(&p("3142")), None);
        assert_eq!(empty_stacks_statistic(&Permutation::empty()), Some(0));
    }
}
