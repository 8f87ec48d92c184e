//! Composite experiments: the density trichotomy, cutoff decay, the Koch
//! case study, the Hardy reduction and the membership test.

pub mod cutoff;
pub mod koch;
pub mod membership;
pub mod reduction;
pub mod verdict;

pub use cutoff::{
    cutoff_decay_experiment, koch_level_for, resolution_rule_holds, CutoffPoint, CutoffSeries,
    DEFAULT_N_GRID,
};
pub use koch::{koch_case_study, koch_case_study_with, koch_codimension, KochOptions, KochReport};
pub use membership::{membership_test, Membership, MembershipReport};
pub use reduction::{hardy_reduction_experiment, HardyReductionReport, ReductionOptions};
pub use verdict::{density_verdict, verdict_margin, CheckStatus, DensityVerdict, Verdict};
