use super::AnalysisError;
use crate::expr::{eval_jet, Expr};
use crate::methods::vanishing_threshold;
use crate::numeric::Real;

/// Derivative at the root plus `c_h = f^(h)(alpha) / (h! f'(alpha))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoeffs {
    pub fprime: Real,
    pub c2: Real,
    pub c3: Real,
    pub c4: Real,
}

pub fn taylor_coeffs(expr: &Expr, alpha: &Real) -> Result<TaylorCoeffs, AnalysisError> {
    let jet = eval_jet(expr, alpha)?;
    let fprime = jet.coeff(1).clone();
    if fprime.is_zero() || fprime.abs() < vanishing_threshold(alpha.precision()) {
        return Err(AnalysisError::DerivativeVanished);
    }
    Ok(TaylorCoeffs {
        c2: jet.coeff(2) / &fprime,
        c3: jet.coeff(3) / &fprime,
        c4: jet.coeff(4) / &fprime,
        fprime,
    })
}

/// Coefficient of `e_n^3` in the inverse bisectrix error equation:
/// `c2^2 / (1 + f'^2) + c3 / 2`.
pub fn predicted_constant_third_inverse_bisectrix(coeffs: &TaylorCoeffs) -> Real {
    let prec = coeffs.c2.precision();
    let one = Real::one(prec);
    &coeffs.c2 * &coeffs.c2 / (&one + &coeffs.fprime * &coeffs.fprime)
        + &coeffs.c3 / Real::from_int(2, prec)
}

/// Coefficient of `e_n^4` for the weighted fourth-order family:
/// `-c2 c3 + c4/9 + (309 + 32 g3)/81 c2^3`.
pub fn predicted_constant_fourth(coeffs: &TaylorCoeffs, g3: &Real) -> Real {
    let prec = coeffs.c2.precision();
    let int = |n: i64| Real::from_int(n, prec);
    let TaylorCoeffs { c2, c3, c4, .. } = coeffs;
    -(c2 * c3) + c4 / int(9) + (int(309) + int(32) * g3) / int(81) * c2.powi(3)
}
