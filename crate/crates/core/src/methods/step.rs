use num_rational::BigRational;
use thiserror::Error;

use super::kind::MethodKind;
use super::weight::WeightFn;
use crate::expr::{eval_jet, EvalError, Expr};
use crate::numeric::{Precision, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("derivative vanished at the current iterate")]
    DerivativeVanished,
    #[error("method denominator vanished")]
    DenominatorVanished,
    #[error("evaluation failed: {0}")]
    Domain(#[from] EvalError),
    #[error("weight function does not satisfy the order-four conditions")]
    InvalidWeight,
}

/// One completed step: the new iterate and the intermediate point `y`.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub next: Real,
    pub aux: Real,
}

/// Magnitude below which a denominator is treated as zero.
pub fn vanishing_threshold(prec: Precision) -> Real {
    Real::pow10(10 - prec.digits() as i32, prec)
}

struct Point {
    f: Real,
    df: Real,
}

fn value_and_slope(expr: &Expr, x: &Real) -> Result<Point, StepError> {
    let jet = eval_jet(expr, x)?;
    let [f, df, ..] = jet.coeffs().clone();
    Ok(Point { f, df })
}

fn slope(expr: &Expr, x: &Real) -> Result<Real, StepError> {
    Ok(eval_jet(expr, x)?.coeff(1).clone())
}

fn nonvanishing(value: &Real, tiny: &Real, err: StepError) -> Result<(), StepError> {
    if value.is_zero() || value.abs() < *tiny {
        Err(err)
    } else {
        Ok(())
    }
}

/// Advances `x` by one step of `kind`.
pub fn step(kind: &MethodKind, expr: &Expr, x: &Real) -> Result<StepOutcome, StepError> {
    let prec = x.precision();
    let tiny = vanishing_threshold(prec);
    let int = |n: i64| Real::from_int(n, prec);

    let Point { f: fx, df: dfx } = value_and_slope(expr, x)?;
    nonvanishing(&dfx, &tiny, StepError::DerivativeVanished)?;
    let newton_step = &fx / &dfx;

    if let MethodKind::WeightedFourth { weight, a } = kind {
        if !weight.satisfies_conditions() {
            return Err(StepError::InvalidWeight);
        }
        let y = x - &Real::from_ratio(a, prec) * &newton_step;
        let t = slope(expr, &y)? / &dfx;
        let g = weight.eval_real(&t);
        let next = x - (int(3) - &t) / int(2) * &newton_step * &g;
        return Ok(StepOutcome { next, aux: y });
    }

    let y = x - &newton_step;
    if let MethodKind::Newton = kind {
        return Ok(StepOutcome {
            next: y.clone(),
            aux: y,
        });
    }
    let dfy = slope(expr, &y)?;

    let next = match kind {
        MethodKind::Weerakoon => {
            let den = &dfx + &dfy;
            nonvanishing(&den, &tiny, StepError::DenominatorVanished)?;
            x - int(2) * &fx / den
        }
        MethodKind::Homeier => {
            nonvanishing(&dfy, &tiny, StepError::DenominatorVanished)?;
            x - &fx / int(2) * (int(1) / &dfx + int(1) / &dfy)
        }
        MethodKind::Bisectrix => {
            let root = bisectrix_root(&dfx, &dfy);
            let den = &dfx * &dfy + root - int(1);
            nonvanishing(&den, &tiny, StepError::DenominatorVanished)?;
            x - (&dfx + &dfy) * &fx / den
        }
        MethodKind::InverseBisectrix => {
            let den = &dfx + &dfy;
            nonvanishing(&den, &tiny, StepError::DenominatorVanished)?;
            let root = bisectrix_root(&dfx, &dfy);
            x - &fx * ((int(1) + root - &dfx * &dfy) / den)
        }
        MethodKind::Chun3 => {
            let t = &dfy / &dfx;
            x - (int(3) - t) / int(2) * &newton_step
        }
        MethodKind::Newton | MethodKind::WeightedFourth { .. } => unreachable!("handled above"),
    };
    Ok(StepOutcome { next, aux: y })
}

/// `sqrt((1 + a^2)(1 + b^2))`; the radicand is a product of factors no
/// smaller than one.
fn bisectrix_root(a: &Real, b: &Real) -> Real {
    let one = Real::one(a.precision());
    let radicand = (&one + a * a) * (&one + b * b);
    assert!(
        radicand >= one,
        "bisectrix radicand fell below one: {radicand:?}"
    );
    radicand.sqrt()
}

/// Newton, Weerakoon-Fernando, Homeier, or Bisectrix Newton step. Other
/// variants are dispatched the same way.
pub fn step_classic(kind: &MethodKind, expr: &Expr, x: &Real) -> Result<Real, StepError> {
    step(kind, expr, x).map(|s| s.next)
}

pub fn step_inverse_bisectrix(expr: &Expr, x: &Real) -> Result<Real, StepError> {
    step(&MethodKind::InverseBisectrix, expr, x).map(|s| s.next)
}

pub fn step_chun(expr: &Expr, x: &Real) -> Result<Real, StepError> {
    step(&MethodKind::Chun3, expr, x).map(|s| s.next)
}

pub fn step_weighted_fourth(
    expr: &Expr,
    x: &Real,
    weight: &WeightFn,
    a: &BigRational,
) -> Result<Real, StepError> {
    let kind = MethodKind::WeightedFourth {
        weight: weight.clone(),
        a: a.clone(),
    };
    step(&kind, expr, x).map(|s| s.next)
}
