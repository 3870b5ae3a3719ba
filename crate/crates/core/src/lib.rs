//! Exact hypervolume computation for minimization problems, together with
//! the operations built on it: per-point and joint contributions, least
//! contributor search, incremental and decremental maintenance of both the
//! indicator and full contribution tables, subset selection (exact and
//! approximate), and local upper bound sets.
//!
//! All quantities are measured inside the axis-aligned box below a
//! reference point: the hypervolume of a front is the Lebesgue measure of
//! the set of points weakly dominated by some member and weakly dominating
//! the reference. Points outside that box are ignored rather than
//! rejected, so callers can pass raw fronts.
//!
//! Every fast algorithm in this crate is checked in its tests against
//! slow, independent baselines (inclusion-exclusion, recursive slicing,
//! grid counting, Monte Carlo) that share no code with the optimized
//! paths.

mod error;
mod kahan;
mod staircase;

pub mod bounds;
pub mod contrib;
mod contrib3d;
pub mod geometry;
pub mod hssp;
pub mod hv;
pub mod oracle;
pub mod twoset;

pub use bounds::{is_local_upper_bound, local_upper_bounds, LocalUpperBoundSet};
pub use contrib::{
    all_contributions, all_contributions_2d, joint_contribution, least_contributor,
    one_contribution, update_all_contributions, ContributionTable,
};
pub use contrib3d::all_contributions_3d;
pub use error::{HvError, Result};
pub use geometry::{
    bound_and_filter, validate_front, DelimiterSet, Front, NondominanceFlag, Point, ReferencePoint,
    ValidatedFront, ValidationPolicy,
};
pub use hssp::{
    approximation_report, gsemo_default_budget, hssp_exact_2d, hssp_exhaustive,
    hssp_greedy_decremental, hssp_greedy_incremental, hssp_gsemo, hssp_local_search,
    ApproximationReport, HsspMethod, HsspSolution, MethodReport, TraceStep, DEFAULT_SUBSET_BUDGET,
    GSEMO_MAX_POINTS,
};
pub use hv::{
    hv, hv_2d, hv_3d, hv_4d, hv_wfg, hv_with_algorithm, update_hv, AlgorithmId, HvResult,
    UpdateMode,
};
pub use oracle::{
    contribution_oracle, hv_grid, hv_hso, hv_inclusion_exclusion, hv_monte_carlo, McEstimate,
    DEFAULT_GRID_BUDGET, MAX_INCLUSION_EXCLUSION_POINTS,
};
pub use twoset::TwoSetContributionState;
