//! Monte-Carlo liveness estimation over parameter grids.
//!
//! A trial draws a guardian topology, a round-1 participant set `D` and a
//! round-2 presence set `T`, then asks whether `T` can rebuild every partial
//! secret of `D`.

mod sweep;
mod topology;

pub use sweep::{
    run_sweep, sample_round_sets, trial_seed, trial_success, write_csv, BaScope, Cell, SuccessRate, SweepConfig,
    SweepReport, ThresholdRule, TrialOutcome, CSV_HEADER,
};
pub use topology::{in_degrees, select_guardians_ba, select_guardians_er, skew_ratio, Topology};
