//! Convergence diagnostics: reference roots, computational order of
//! convergence, efficiency index, Taylor coefficients at the root, and
//! predicted versus empirical asymptotic error constants.

mod order;
mod report;
mod root;
mod taylor;

use thiserror::Error;

use crate::expr::EvalError;
use crate::methods::RunError;

pub use order::{
    coc_estimate, efficiency_index, empirical_ratios, signed_errors, usability_floor, usable_errors,
};
pub use report::{analyze, ConstantVerdict, ConvergenceReport, AGREEMENT_TOLERANCE};
pub use root::{reference_root, RootReference};
pub use taylor::{
    predicted_constant_fourth, predicted_constant_third_inverse_bisectrix, taylor_coeffs,
    TaylorCoeffs,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("function does not change sign over the bracket")]
    NoSignChange,
    #[error("reference Newton refinement stalled before reaching the residual threshold")]
    NonConvergence,
    #[error("need at least 3 iterates above the usability floor, found {usable}")]
    InsufficientIterates { usable: usize },
    #[error("derivative vanishes at the root")]
    DerivativeVanished,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Run(#[from] RunError),
}
