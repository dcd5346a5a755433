use std::fmt;

use super::order::{coc_estimate, efficiency_index, empirical_ratios, usable_errors};
use super::root::reference_root;
use super::taylor::{
    predicted_constant_fourth, predicted_constant_third_inverse_bisectrix, taylor_coeffs,
};
use super::AnalysisError;
use crate::expr::Expr;
use crate::methods::{run, IterationSettings, MethodKind, StopReason};
use crate::numeric::{Precision, Real};

/// Relative tolerance for predicted versus empirical constants.
pub const AGREEMENT_TOLERANCE: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantVerdict {
    /// Within [`AGREEMENT_TOLERANCE`] of the prediction.
    Agrees,
    /// Still outside tolerance after a doubled-precision re-run.
    Discrepancy,
    /// No closed-form prediction for this method.
    Unavailable,
}

impl ConstantVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantVerdict::Agrees => "agrees",
            ConstantVerdict::Discrepancy => "discrepancy",
            ConstantVerdict::Unavailable => "n/a",
        }
    }
}

impl fmt::Display for ConstantVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub method: MethodKind,
    /// Precision of the run the figures below come from.
    pub precision: Precision,
    pub alpha: Real,
    pub stop: StopReason,
    /// Signed errors above the usability floor, starting at `x0`.
    pub errors: Vec<Real>,
    pub coc_sequence: Vec<Real>,
    pub final_coc: Real,
    /// Signed `e_{n+1} / e_n^p` for each consecutive usable pair.
    pub ratios: Vec<Real>,
    /// `|e_{n+1}| / |e_n|^p` at the last usable `n`.
    pub empirical_constant: Real,
    pub predicted_constant: Option<Real>,
    pub verdict: ConstantVerdict,
    pub efficiency_index: Real,
}

impl ConvergenceReport {
    /// Signed empirical constant, comparable with `predicted_constant`.
    pub fn signed_constant(&self) -> &Real {
        self.ratios
            .last()
            .expect("report holds at least two ratios")
    }

    /// Relative gap between the signed empirical and predicted constants.
    pub fn relative_gap(&self) -> Option<Real> {
        let predicted = self.predicted_constant.as_ref()?;
        if predicted.is_zero() {
            return None;
        }
        Some(((self.signed_constant() - predicted) / predicted).abs())
    }
}

/// Runs `method` from `x0` and measures its convergence against the root in
/// `bracket`.
///
/// The run is repeated once at doubled precision when fewer than four
/// errors clear the usability floor, and once more when the empirical
/// constant misses its prediction by more than 10%.
pub fn analyze(
    expr: &Expr,
    method: &MethodKind,
    x0: &Real,
    bracket: (&Real, &Real),
) -> Result<ConvergenceReport, AnalysisError> {
    let base = x0.precision();
    let mut report = match attempt(expr, method, x0, bracket, base) {
        Ok(r) if r.errors.len() >= 4 => r,
        Ok(_) | Err(AnalysisError::InsufficientIterates { .. }) => {
            attempt(expr, method, x0, bracket, base.doubled())?
        }
        Err(e) => return Err(e),
    };
    if report.verdict == ConstantVerdict::Discrepancy && report.precision == base {
        report = attempt(expr, method, x0, bracket, base.doubled())?;
    }
    Ok(report)
}

fn attempt(
    expr: &Expr,
    method: &MethodKind,
    x0: &Real,
    bracket: (&Real, &Real),
    prec: Precision,
) -> Result<ConvergenceReport, AnalysisError> {
    let root = reference_root(
        expr,
        (
            bracket.0.with_precision(prec),
            bracket.1.with_precision(prec),
        ),
    )?;
    let alpha = root.alpha.with_precision(prec);
    let trace = run(
        expr,
        method,
        &x0.with_precision(prec),
        &IterationSettings::for_precision(prec),
    )?;
    let coc_sequence = coc_estimate(&trace, &alpha)?;
    let errors = usable_errors(&trace, &alpha);
    let order = method.theoretical_order();
    let ratios = empirical_ratios(&errors, order);

    let predicted_constant =
        predicted_constant(expr, method, &root.alpha)?.map(|v| v.with_precision(prec));
    let signed = ratios.last().expect("three usable errors give two ratios");
    let verdict = match &predicted_constant {
        None => ConstantVerdict::Unavailable,
        Some(p) => {
            let tol = Real::parse_decimal(&AGREEMENT_TOLERANCE.to_string(), prec)
                .expect("tolerance literal");
            if (signed - p).abs() <= tol * p.abs() {
                ConstantVerdict::Agrees
            } else {
                ConstantVerdict::Discrepancy
            }
        }
    };

    Ok(ConvergenceReport {
        method: method.clone(),
        precision: prec,
        alpha,
        stop: trace.stop,
        final_coc: coc_sequence.last().expect("nonempty").clone(),
        empirical_constant: signed.abs(),
        efficiency_index: efficiency_index(
            &Real::from_int(i64::from(order), prec),
            method.evals_per_iter(),
        ),
        coc_sequence,
        errors,
        ratios,
        predicted_constant,
        verdict,
    })
}

/// Closed-form constant for methods that have one: `c2` for Newton, the
/// bisectrix formula for both bisectrix forms (they are the same iteration)
/// and the weighted formula when the order-four conditions hold.
fn predicted_constant(
    expr: &Expr,
    method: &MethodKind,
    alpha: &Real,
) -> Result<Option<Real>, AnalysisError> {
    let coeffs = match method {
        MethodKind::Newton
        | MethodKind::Bisectrix
        | MethodKind::InverseBisectrix
        | MethodKind::WeightedFourth { .. } => taylor_coeffs(expr, alpha)?,
        _ => return Ok(None),
    };
    Ok(match method {
        MethodKind::Newton => Some(coeffs.c2),
        MethodKind::Bisectrix | MethodKind::InverseBisectrix => {
            Some(predicted_constant_third_inverse_bisectrix(&coeffs))
        }
        MethodKind::WeightedFourth { weight, .. } if method.order_is_proven() => {
            let g3 = Real::from_ratio(weight.g3(), alpha.precision());
            Some(predicted_constant_fourth(&coeffs, &g3))
        }
        _ => None,
    })
}
