//! Numerical certification of the inequalities and the lemmas behind them.
//!
//! Every check returns a [`CheckResult`]; [`run_suite`] runs the full sample
//! and assembles a [`Report`] whose JSON form does not depend on how many
//! workers executed it.

mod grid;
mod lemmas;
mod report;
mod roots;
mod suite;
mod sweep;
mod theorem;

pub use grid::{GridSpec, Spacing};
pub use lemmas::{
    check_beta_convex, check_f_ranges, check_fpp_positive, check_lemma_g, check_lemma_g1,
    check_lemma_q, check_weighted_decrease,
};
pub use report::{CheckResult, Report, Status, Tolerances, Witness};
pub use roots::{check_roots_f4, isolate_roots, isolate_roots_f4, RootIsolation};
pub use suite::{default_pairs, report_for, run_check, run_suite, CheckInput, SuiteConfig, CHECK_IDS};
pub use sweep::{sweep, write_sweep_csv, SweepRow, SWEEP_HEADER};
pub use theorem::{
    check_g_monotone, check_sandwich, check_sharpness, find_crossing, g_value, Profile,
    ThreeTerms,
};
