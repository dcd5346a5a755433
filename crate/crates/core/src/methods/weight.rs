use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::EvalError;
use crate::numeric::{Jet4, Precision, Real};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightSpecError {
    #[error("weight spec `{0}` must be `chun` or `poly:<c0,c1,...>`")]
    UnknownForm(String),
    #[error("weight coefficient `{0}` is not a decimal or p/q rational")]
    BadCoefficient(String),
    #[error("polynomial weight needs at least one coefficient")]
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightShape {
    /// Coefficients in `t`, lowest degree first.
    Polynomial(Vec<BigRational>),
    /// `G(t) = 9/4 - (9/4) t + t^2`, the built-in optimal instance.
    Chun,
}

/// Weight function `G(t)` of the fourth-order family, with its value and
/// first three derivatives at `t = 1` computed exactly from the
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFn {
    shape: WeightShape,
    at_one: [BigRational; 4],
}

/// Conditions on `G(1), G'(1), G''(1)` that lift the order from three to four.
pub const WEIGHT_TARGETS: [(&str, i64, i64); 3] =
    [("G(1)", 1, 1), ("G'(1)", -1, 4), ("G''(1)", 2, 1)];

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn chun_coeffs() -> Vec<BigRational> {
    vec![ratio(9, 4), ratio(-9, 4), ratio(1, 1)]
}

/// Exact `G^(k)(1)` for `k = 0..=3`.
fn derivatives_at_one(coeffs: &[BigRational]) -> [BigRational; 4] {
    std::array::from_fn(|k| {
        coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(n, c)| {
                let falling: i64 = (0..k as i64).map(|j| n as i64 - j).product();
                c * BigRational::from_integer(BigInt::from(falling))
            })
            .fold(BigRational::zero(), |acc, term| acc + term)
    })
}

impl WeightFn {
    pub fn polynomial(coeffs: Vec<BigRational>) -> Self {
        let at_one = derivatives_at_one(&coeffs);
        Self {
            shape: WeightShape::Polynomial(coeffs),
            at_one,
        }
    }

    pub fn chun() -> Self {
        Self {
            at_one: derivatives_at_one(&chun_coeffs()),
            shape: WeightShape::Chun,
        }
    }

    pub fn shape(&self) -> &WeightShape {
        &self.shape
    }

    /// `[G(1), G'(1), G''(1), G'''(1)]`.
    pub fn at_one(&self) -> &[BigRational; 4] {
        &self.at_one
    }

    /// Exact check of the three order-four conditions on the cached values.
    pub fn satisfies_conditions(&self) -> bool {
        WEIGHT_TARGETS
            .iter()
            .zip(&self.at_one)
            .all(|((_, n, d), v)| *v == ratio(*n, *d))
    }

    pub fn g3(&self) -> &BigRational {
        &self.at_one[3]
    }

    fn coeffs(&self) -> Vec<BigRational> {
        match &self.shape {
            WeightShape::Polynomial(c) => c.clone(),
            WeightShape::Chun => chun_coeffs(),
        }
    }

    pub fn eval_real(&self, t: &Real) -> Real {
        let prec = t.precision();
        match &self.shape {
            WeightShape::Chun => {
                let nine_fourths = Real::from_int(9, prec) / Real::from_int(4, prec);
                &nine_fourths - &nine_fourths * t + t * t
            }
            WeightShape::Polynomial(c) => horner_real(c, t),
        }
    }

    pub fn eval_jet(&self, t: &Jet4) -> Jet4 {
        let prec = t.precision();
        self.coeffs()
            .iter()
            .rev()
            .fold(Jet4::constant(Real::zero(prec)), |acc, c| {
                &(&acc * t) + &Jet4::constant(Real::from_ratio(c, prec))
            })
    }
}

fn horner_real(coeffs: &[BigRational], t: &Real) -> Real {
    let prec = t.precision();
    coeffs.iter().rev().fold(Real::zero(prec), |acc, c| {
        acc * t + Real::from_ratio(c, prec)
    })
}

/// Parses `p/q`, integers, and decimals with optional exponent into an exact
/// rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n = parse_rational(num)?;
        let d = parse_rational(den)?;
        return (!d.is_zero()).then(|| n / d);
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !(int_part.bytes().all(|b| b.is_ascii_digit())
        && frac_part.bytes().all(|b| b.is_ascii_digit()))
    {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse::<BigInt>().ok()? / 10;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for WeightFn {
    type Err = WeightSpecError;

    /// Accepts `chun`, `poly:<c0,c1,...>`, optionally prefixed by `weight=`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let spec = spec.trim();
        let body = spec.strip_prefix("weight=").unwrap_or(spec);
        if body == "chun" {
            return Ok(Self::chun());
        }
        let list = body
            .strip_prefix("poly:")
            .ok_or_else(|| WeightSpecError::UnknownForm(spec.to_string()))?;
        if list.trim().is_empty() {
            return Err(WeightSpecError::Empty);
        }
        let coeffs = list
            .split(',')
            .map(|c| {
                parse_rational(c)
                    .ok_or_else(|| WeightSpecError::BadCoefficient(c.trim().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::polynomial(coeffs))
    }
}

impl fmt::Display for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            WeightShape::Chun => f.write_str("chun"),
            WeightShape::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(format_rational).collect();
                write!(f, "poly:{}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub target: Real,
    pub value: Real,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct WeightReport {
    pub conditions: Vec<ConditionCheck>,
    /// `G'''(1)`; only finiteness is required.
    pub g3: Real,
    pub all_pass: bool,
}

/// Checks the order-four conditions on `weight` within `tol`.
///
/// Polynomials are checked on their exact rational derivatives; the
/// built-in Chun weight is evaluated as a degree-4 jet at `t = 1`.
pub fn validate_weight(weight: &WeightFn, tol: &Real) -> Result<WeightReport, EvalError> {
    let prec = tol.precision().max(Precision::default());
    let values: [Real; 4] = match weight.shape() {
        WeightShape::Polynomial(_) => {
            std::array::from_fn(|k| Real::from_ratio(&weight.at_one()[k], prec))
        }
        WeightShape::Chun => {
            let jet = weight.eval_jet(&Jet4::variable(Real::one(prec)));
            std::array::from_fn(|k| jet.derivative(k))
        }
    };
    if !values.iter().all(Real::is_finite) {
        return Err(EvalError {
            position: 0,
            reason: "weight is not finite at t = 1".into(),
        });
    }
    let conditions: Vec<ConditionCheck> = WEIGHT_TARGETS
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(k, ((name, n, d), value))| {
            let target = Real::from_ratio(&ratio(*n, *d), prec);
            let pass = match weight.shape() {
                WeightShape::Polynomial(_) => {
                    let gap = &weight.at_one()[k] - ratio(*n, *d);
                    Real::from_ratio(&gap, prec).abs() <= *tol
                }
                WeightShape::Chun => (value - &target).abs() <= *tol,
            };
            ConditionCheck {
                name,
                target,
                value: value.clone(),
                pass,
            }
        })
        .collect();
    let all_pass = conditions.iter().all(|c| c.pass);
    Ok(WeightReport {
        conditions,
        g3: values[3].clone(),
        all_pass,
    })
}
