use super::AnalysisError;
use crate::methods::Trace;
use crate::numeric::{Precision, Real};

/// Errors at or below `10^(30 - d)` are dominated by rounding.
pub fn usability_floor(prec: Precision) -> Real {
    Real::pow10(30 - prec.digits() as i32, prec)
}

/// Signed errors `x_k - alpha` for every iterate of the trace.
pub fn signed_errors(trace: &Trace, alpha: &Real) -> Vec<Real> {
    trace.iterates.iter().map(|x| x - alpha).collect()
}

/// The leading run of signed errors whose magnitude stays above the
/// usability floor of the trace's precision.
pub fn usable_errors(trace: &Trace, alpha: &Real) -> Vec<Real> {
    let floor = usability_floor(trace.precision());
    signed_errors(trace, alpha)
        .into_iter()
        .take_while(|e| e.abs() > floor)
        .collect()
}

/// `rho_n = ln|e_{n+1}/e_n| / ln|e_n/e_{n-1}|` over each consecutive triple
/// of usable errors.
pub fn coc_estimate(trace: &Trace, alpha: &Real) -> Result<Vec<Real>, AnalysisError> {
    let errors = usable_errors(trace, alpha);
    if errors.len() < 3 {
        return Err(AnalysisError::InsufficientIterates {
            usable: errors.len(),
        });
    }
    let logs: Vec<Real> = errors.iter().map(|e| e.abs().ln()).collect();
    Ok(logs
        .windows(3)
        .map(|w| (&w[2] - &w[1]) / (&w[1] - &w[0]))
        .collect())
}

/// Signed ratios `e_{n+1} / e_n^p` for consecutive usable errors.
pub fn empirical_ratios(errors: &[Real], order: u32) -> Vec<Real> {
    errors
        .windows(2)
        .map(|w| &w[1] / &w[0].powi(i64::from(order)))
        .collect()
}

/// `order^(1/evals)`.
///
/// # Panics
/// If `evals` is zero.
pub fn efficiency_index(order: &Real, evals: u32) -> Real {
    assert!(evals > 0, "efficiency index needs at least one evaluation");
    let prec = order.precision();
    (order.ln() / Real::from_int(i64::from(evals), prec)).exp()
}
