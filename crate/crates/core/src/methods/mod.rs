//! Iteration schemes, weight functions for the fourth-order family, and the
//! driver that records a [`Trace`] of each solve.

mod kind;
mod run;
mod step;
mod weight;

pub use kind::{MethodKind, MethodParseError};
pub use run::{run, IterationSettings, RunError, SettingsError, StopReason, Trace};
pub use step::{
    step, step_chun, step_classic, step_inverse_bisectrix, step_weighted_fourth,
    vanishing_threshold, StepError, StepOutcome,
};
pub use weight::{
    parse_rational, validate_weight, ConditionCheck, WeightFn, WeightReport, WeightShape,
    WeightSpecError, WEIGHT_TARGETS,
};
