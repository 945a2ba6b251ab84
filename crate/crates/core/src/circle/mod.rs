//! Exponential sums over the forms `F_j`, differencing, bihomogeneous pieces
//! and the major arc machinery.

mod alpha;
mod approx;
mod bihom;
mod check;
mod decouple;
mod dichotomy;
mod shrink;
mod sums;
mod weyl;

pub use alpha::{grid_point, AlphaTuple};
pub use approx::{
    best_denominator_exhaustive, major_arc_exhaustive, major_arc_test, rational_approx, MajorArcReport, RationalApprox,
};
pub use bihom::{count_chain_check, cross_check_e, eval_e, n_counts, ArcParams, BihomSum, NCountKind};
pub use check::{Check, REL_TOL};
pub use shrink::{shrink_check, shrink_count, ShrinkParams, SymmetricForms};
pub use dichotomy::{
    arc_shell_integral, dichotomy_check, sigma_estimate, Dichotomy, DichotomyContext, DichotomyReport, ShellReport, ShellRow,
    SigmaReport, VStarCase,
};
pub use decouple::{decouple_check, lemma_t_bound_check, Decoupling, Piece};
pub use sums::{eval_s, exact_integral_n, point_orthogonality, ExponentialSum};
pub use weyl::{diagonal_identity_holds, homogeneous_component, weyl_difference};
