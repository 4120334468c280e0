//! Exhaustive sortability for any stack-series machine.
//!
//! Depth-first search over machine states, trying moves in ascending
//! boundary order and remembering every state already shown to be a dead
//! end. Every move carries an entry strictly closer to the output, so the
//! state graph is acyclic and the search terminates.
//!
//! By default a legal output move is taken as soon as it is available and
//! no alternative is explored. Emitting the forced value never disables
//! another move: it only uncovers a larger top on the last stack. The eager
//! rule can be switched off with [`Oracle::eager_output`] to check that
//! claim.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::machine::{MachineConfig, MachineState, Move, Trace};
use crate::permutation::Permutation;

/// Default ceiling on the permutation length the oracle accepts.
pub const SEARCH_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
    eager_output: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: SEARCH_CAP,
            eager_output: true,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn eager_output(mut self, eager: bool) -> Self {
        self.eager_output = eager;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn sortable(&self, perm: &Permutation, config: &MachineConfig) -> Result<bool> {
        Ok(self.witness(perm, config)?.is_some())
    }

    /// The first sorting trace found, or `None` if there is none.
    pub fn witness(&self, perm: &Permutation, config: &MachineConfig) -> Result<Option<Trace>> {
        if perm.len() > self.cap {
            return Err(Error::limit("oracle input length", perm.len(), self.cap));
        }
        let mut search = Search {
            config,
            eager_output: self.eager_output,
            failed: HashSet::new(),
            path: Vec::with_capacity(perm.len() * (config.len() + 1)),
        };
        let start = MachineState::initial(perm, config);
        Ok(search.solve(&start).then(|| Trace::new(search.path)))
    }
}

struct Search<'a> {
    config: &'a MachineConfig,
    eager_output: bool,
    failed: HashSet<MachineState>,
    path: Vec<Move>,
}

impl Search<'_> {
    fn solve(&mut self, state: &MachineState) -> bool {
        if state.is_sorted() {
            return true;
        }
        if self.failed.contains(state) {
            return false;
        }

        let output = self.config.output_move();
        let moves = if self.eager_output && state.is_legal(output, self.config) {
            vec![output]
        } else {
            state
                .legal_moves(self.config)
                .expect("search states match the machine")
        };

        for mv in moves {
            let child = state
                .apply_move(mv, self.config)
                .expect("legal moves apply");
            self.path.push(mv);
            if self.solve(&child) {
                return true;
            }
            self.path.pop();
        }

        self.failed.insert(state.clone());
        false
    }
}

/// Whether any legal move sequence sorts `perm` on `config`, with the
/// default search cap.
pub fn oracle_sortable(perm: &Permutation, config: &MachineConfig) -> Result<bool> {
    Oracle::default().sortable(perm, config)
}

pub fn oracle_witness(perm: &Permutation, config: &MachineConfig) -> Result<Option<Trace>> {
    Oracle::default().witness(perm, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{replay_trace, StackRestriction};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn machine(s: &str) -> MachineConfig {
        s.parse().unwrap()
    }

    #[test]
    fn unsortable_examples() {
        assert!(!oracle_sortable(&p("3142"), &MachineConfig::di()).unwrap());
        assert!(!oracle_sortable(&p("3241"), &MachineConfig::di()).unwrap());
        assert!(!oracle_sortable(&p("24513"), &machine("II")).unwrap());
        assert!(!oracle_sortable(
            &p("231"),
            &MachineConfig::single(StackRestriction::Unrestricted)
        )
        .unwrap());
    }

    #[test]
    fn identity_sorts_everywhere() {
        for spec in ["DI", "U", "I", "D", "II", "DDI", "DIDI", "UU"] {
            let config = machine(spec);
            for n in [0, 1, 5, 12] {
                assert!(
                    oracle_sortable(&Permutation::identity(n), &config).unwrap(),
                    "{spec} {n}"
                );
            }
        }
    }

    #[test]
    fn witness_examples() {
        let di = MachineConfig::di();
        let trace = oracle_witness(&p("24513"), &di).unwrap().unwrap();
        assert_eq!(trace.len(), 15);
        assert!(replay_trace(&p("24513"), &trace, &di).unwrap().sorted);

        assert_eq!(oracle_witness(&p("3142"), &di).unwrap(), None);

        let single = oracle_witness(&p("1"), &di).unwrap().unwrap();
        assert_eq!(single.to_text(&di), "in xfer out");
    }

    #[test]
    fn cap_is_enforced() {
        let err = oracle_sortable(&Permutation::identity(13), &MachineConfig::di()).unwrap_err();
        assert!(err.is_limit());
        let roomy = Oracle::new().with_cap(13);
        assert!(roomy
            .sortable(&Permutation::identity(13), &MachineConfig::di())
            .unwrap());
    }

    #[test]
    fn deterministic_witnesses() {
        let config = machine("DDI");
        let perm = p("426153");
        let first = oracle_witness(&perm, &config).unwrap();
        for _ in 0..3 {
            assert_eq!(oracle_witness(&perm, &config).unwrap(), first);
        }
    }

    #[test]
    fn lazy_output_agrees_on_small_cases() {
        let lazy = Oracle::new().eager_output(false);
        for spec in ["DI", "U", "II"] {
            let config = machine(spec);
            for perm in crate::permutation::all_permutations(4).unwrap() {
                assert_eq!(
                    lazy.sortable(&perm, &config).unwrap(),
                    oracle_sortable(&perm, &config).unwrap(),
                    "{spec} {perm}"
                );
            }
        }
    }
}
