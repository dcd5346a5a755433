use std::fmt;

use thiserror::Error;

use super::kind::MethodKind;
use super::step::{step, StepError};
use crate::expr::{eval_real, EvalError, Expr};
use crate::numeric::{Precision, Real};

#[derive(Debug, Clone)]
pub struct IterationSettings {
    /// Stop when `|x_{n+1} - x_n|` is at most this.
    pub tol_step: Real,
    /// Stop when `|f(x_{n+1})|` is at most this.
    pub tol_residual: Real,
    pub max_iter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SettingsError {
    #[error("tolerances must be positive")]
    NonPositiveTolerance,
    #[error("max_iter must be at least 1")]
    ZeroIterations,
}

impl IterationSettings {
    pub const DEFAULT_MAX_ITER: usize = 100;

    pub fn new(tol_step: Real, tol_residual: Real, max_iter: usize) -> Result<Self, SettingsError> {
        if !tol_step.is_positive() || !tol_residual.is_positive() {
            return Err(SettingsError::NonPositiveTolerance);
        }
        if max_iter == 0 {
            return Err(SettingsError::ZeroIterations);
        }
        Ok(Self {
            tol_step,
            tol_residual,
            max_iter,
        })
    }

    /// Both tolerances at `10^-(digits - 20)`, 100 iterations.
    pub fn for_precision(prec: Precision) -> Self {
        let tol = Real::pow10(20 - prec.digits() as i32, prec);
        Self {
            tol_step: tol.clone(),
            tol_residual: tol,
            max_iter: Self::DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    StepTolerance,
    ResidualTolerance,
    MaxIterations,
    DerivativeVanished,
    DenominatorVanished,
    DomainError,
}

impl StopReason {
    pub fn converged(self) -> bool {
        matches!(
            self,
            StopReason::StepTolerance | StopReason::ResidualTolerance
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::StepTolerance => "step_tolerance",
            StopReason::ResidualTolerance => "residual_tolerance",
            StopReason::MaxIterations => "max_iterations",
            StopReason::DerivativeVanished => "derivative_vanished",
            StopReason::DenominatorVanished => "denominator_vanished",
            StopReason::DomainError => "domain_error",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<&StepError> for StopReason {
    fn from(e: &StepError) -> Self {
        match e {
            StepError::DerivativeVanished => StopReason::DerivativeVanished,
            // Weights are checked before the first step.
            StepError::DenominatorVanished | StepError::InvalidWeight => {
                StopReason::DenominatorVanished
            }
            StepError::Domain(_) => StopReason::DomainError,
        }
    }
}

/// History of one solve.
#[derive(Debug, Clone)]
pub struct Trace {
    pub iterates: Vec<Real>,
    pub residuals: Vec<Real>,
    /// Intermediate point `y_n` of each completed step.
    pub aux_points: Vec<Real>,
    pub stop: StopReason,
    pub evals_used: u64,
    /// The step failure behind a non-tolerance stop, if any.
    pub failure: Option<StepError>,
}

impl Trace {
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &Real {
        self.iterates
            .last()
            .expect("trace holds the starting point")
    }

    pub fn precision(&self) -> Precision {
        self.iterates[0].precision()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("starting point is outside the function's domain: {0}")]
    StartOutsideDomain(#[from] EvalError),
    #[error("weight function does not satisfy the order-four conditions")]
    InvalidWeight,
}

/// Iterates `method` from `x0` until a stop condition fires.
///
/// Step failures end the trace with the matching [`StopReason`]. Only an
/// unevaluable starting point or a weight failing the order-four conditions
/// is reported as an error.
pub fn run(
    expr: &Expr,
    method: &MethodKind,
    x0: &Real,
    settings: &IterationSettings,
) -> Result<Trace, RunError> {
    if let MethodKind::WeightedFourth { weight, .. } = method {
        if !weight.satisfies_conditions() {
            return Err(RunError::InvalidWeight);
        }
    }
    let f0 = eval_real(expr, x0)?;
    let mut trace = Trace {
        iterates: vec![x0.clone()],
        residuals: vec![f0.clone()],
        aux_points: Vec::new(),
        stop: StopReason::MaxIterations,
        evals_used: 0,
        failure: None,
    };
    if f0.abs() <= settings.tol_residual {
        trace.stop = StopReason::ResidualTolerance;
        return Ok(trace);
    }
    let per_iter = u64::from(method.evals_per_iter());
    for _ in 0..settings.max_iter {
        let x = trace.last().clone();
        let outcome = match step(method, expr, &x) {
            Ok(o) => o,
            Err(e) => {
                trace.stop = StopReason::from(&e);
                trace.failure = Some(e);
                return Ok(trace);
            }
        };
        let residual = match eval_real(expr, &outcome.next) {
            Ok(v) => v,
            Err(e) => {
                trace.stop = StopReason::DomainError;
                trace.failure = Some(StepError::Domain(e));
                return Ok(trace);
            }
        };
        let moved = (&outcome.next - &x).abs();
        let small_residual = residual.abs() <= settings.tol_residual;
        trace.iterates.push(outcome.next);
        trace.residuals.push(residual);
        trace.aux_points.push(outcome.aux);
        trace.evals_used += per_iter;
        if small_residual {
            trace.stop = StopReason::ResidualTolerance;
            return Ok(trace);
        }
        if moved <= settings.tol_step {
            trace.stop = StopReason::StepTolerance;
            return Ok(trace);
        }
    }
    trace.stop = StopReason::MaxIterations;
    Ok(trace)
}
