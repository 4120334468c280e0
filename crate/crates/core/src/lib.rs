//! Sorting with stacks in series.
//!
//! The centre of the crate is the DI machine: a decreasing stack fed by the
//! input, followed by an increasing stack that feeds the output. The crate
//! provides
//!
//! * [`permutation`]: one-line permutations, pattern containment, direct sums;
//! * [`machine`]: configurable stack-series machines, moves and trace replay;
//! * [`algorithm`]: the deterministic DI sorting algorithm;
//! * [`oracle`]: exhaustive sortability search for any machine;
//! * [`combinatorics`]: Schröder and Catalan sequences, class enumeration,
//!   basis search and related censuses.
//!
//! ```
//! use distack::{di_sort, Permutation, PatternSet};
//!
//! let perm: Permutation = "24513".parse().unwrap();
//! assert!(di_sort(&perm, true).is_sorted());
//! assert!(perm.avoids_all(&PatternSet::di_basis()));
//! ```

pub mod algorithm;
pub mod combinatorics;
pub mod error;
pub mod machine;
pub mod oracle;
pub mod permutation;

pub use algorithm::{
    di_sort, diagnose_stuck, empty_stack_visits, empty_stacks_statistic, SortOutcome,
    StuckDiagnosis,
};
pub use combinatorics::{
    av1342_crosscheck, basis_search, catalan, closure_check, closure_counterexample,
    decomposable_census, enumerate_sortable, schroder_check, schroder_large,
    schroder_large_recurrence, schroder_small, Census, CountRow, CountTable, Method,
};
pub use error::{Error, Result};
pub use machine::{
    replay_trace, MachineConfig, MachineState, Move, MoveViolation, Replay, StackRestriction, Trace,
};
pub use oracle::{oracle_sortable, oracle_witness, Oracle};
pub use permutation::{
    all_permutations, all_permutations_capped, avoids_all, contains_pattern, direct_sum,
    is_sum_decomposable, PatternSet, Permutation, Permutations,
};
