use super::AnalysisError;
use crate::expr::{eval_jet, eval_real, Expr};
use crate::numeric::Real;

/// Ground-truth root used for every error column.
#[derive(Debug, Clone)]
pub struct RootReference {
    /// Root at twice the bracket's precision.
    pub alpha: Real,
    /// `|f(alpha)|` at that precision.
    pub residual: Real,
    pub bracket: (Real, Real),
}

const MAX_BISECTIONS: usize = 200;
const MAX_NEWTON: usize = 200;

/// Locates the root inside `bracket` at twice the bracket's precision:
/// bisection down to a half-width of `1e-10`, then Newton until
/// `|f| <= 10^(20 - 2d)` where `d` is the working precision.
pub fn reference_root(expr: &Expr, bracket: (Real, Real)) -> Result<RootReference, AnalysisError> {
    let working = bracket.0.precision().max(bracket.1.precision());
    let hi = working.doubled();
    let (mut a, mut b) = (bracket.0.with_precision(hi), bracket.1.with_precision(hi));
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let threshold = Real::pow10(20 - 2 * working.digits() as i32, hi);
    let done = |alpha: Real, residual: Real| {
        Ok(RootReference {
            alpha,
            residual: residual.abs(),
            bracket: bracket.clone(),
        })
    };

    let fa = eval_real(expr, &a)?;
    let fb = eval_real(expr, &b)?;
    if fa.is_zero() {
        return done(a, fa);
    }
    if fb.is_zero() {
        return done(b, fb);
    }
    if fa.is_negative() == fb.is_negative() {
        return Err(AnalysisError::NoSignChange);
    }

    let two = Real::from_int(2, hi);
    let half_width = Real::pow10(-10, hi);
    let mut fa_negative = fa.is_negative();
    for _ in 0..MAX_BISECTIONS {
        if (&b - &a) / &two <= half_width {
            break;
        }
        let m = (&a + &b) / &two;
        let fm = eval_real(expr, &m)?;
        if fm.is_zero() {
            return done(m, fm);
        }
        if fm.is_negative() == fa_negative {
            a = m;
            fa_negative = fm.is_negative();
        } else {
            b = m;
        }
    }

    let mut x = (&a + &b) / &two;
    for _ in 0..MAX_NEWTON {
        let jet = eval_jet(expr, &x)?;
        let fx = jet.value().clone();
        if fx.abs() <= threshold {
            return done(x, fx);
        }
        let dfx = jet.coeff(1);
        if dfx.is_zero() {
            return Err(AnalysisError::NonConvergence);
        }
        let next = &x - &(&fx / dfx);
        if next == x {
            // Rounding floor reached with the residual still above threshold.
            return Err(AnalysisError::NonConvergence);
        }
        x = next;
    }
    Err(AnalysisError::NonConvergence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Precision;

    fn r(s: &str) -> Real {
        Real::parse_decimal(s, Precision::default()).unwrap()
    }

    fn root(src: &str, lo: &str, hi: &str) -> Result<RootReference, AnalysisError> {
        reference_root(&Expr::parse(src).unwrap(), (r(lo), r(hi)))
    }

    #[test]
    fn planck_root() {
        let rr = root("exp(-x)-1+x/5", "4", "6").unwrap();
        assert_eq!(rr.alpha.to_sci_string(6), "4.96511e0");
        assert_eq!(rr.alpha.precision().digits(), 600);
        assert!(rr.residual <= Real::pow10(-580, rr.alpha.precision()));
    }

    #[test]
    fn sheet_pile_root() {
        let rr = root("(x^3+2.87*x^2-10.28)/4.62 - x", "1", "3").unwrap();
        assert_eq!(rr.alpha.to_sci_string(3), "2.00e0");
    }

    #[test]
    fn linear_root_is_exact() {
        let rr = root("x - 2", "0", "5").unwrap();
        assert_eq!(rr.alpha, r("2"));
        assert!(rr.residual.is_zero());
        // Reversed bracket works too.
        assert_eq!(root("x - 2", "5", "0").unwrap().alpha, r("2"));
    }

    #[test]
    fn requires_sign_change() {
        assert_eq!(
            root("x^2 + 1", "-1", "1").unwrap_err(),
            AnalysisError::NoSignChange
        );
    }

    #[test]
    fn stalls_on_badly_scaled_function() {
        // At 600 digits the first term moves in steps near 1e-500, so the
        // residual never drops below 1e-560, short of the 1e-580 threshold.
        assert_eq!(
            root("1e100*(x - 1/3) + 1e-560", "0", "1").unwrap_err(),
            AnalysisError::NonConvergence
        );
    }
}
