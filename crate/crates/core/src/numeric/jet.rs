use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::{Precision, Real};

/// Number of stored Taylor coefficients (degrees 0 through 4).
pub const JET_LEN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("division by a jet whose value is zero")]
    DivisionByZero,
    #[error("{0}")]
    Domain(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    /// Unary; the right operand is ignored.
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JetFunc {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

/// Degree-4 truncated Taylor series of a function at a point.
///
/// `coeffs[k]` holds `f^(k)(x) / k!`, so products are plain Cauchy
/// convolutions truncated at degree 4.
#[derive(Clone, PartialEq)]
pub struct Jet4 {
    coeffs: [Real; JET_LEN],
}

impl Jet4 {
    pub fn from_coeffs(coeffs: [Real; JET_LEN]) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: Real) -> Self {
        let zero = Real::zero(c.precision());
        Self {
            coeffs: [c, zero.clone(), zero.clone(), zero.clone(), zero],
        }
    }

    pub fn variable(x: Real) -> Self {
        let prec = x.precision();
        let zero = Real::zero(prec);
        Self {
            coeffs: [x, Real::one(prec), zero.clone(), zero.clone(), zero],
        }
    }

    pub fn coeffs(&self) -> &[Real; JET_LEN] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Real {
        &self.coeffs[k]
    }

    pub fn value(&self) -> &Real {
        &self.coeffs[0]
    }

    /// The raw derivative `f^(k)(x) = k! · coeffs[k]`.
    pub fn derivative(&self, k: usize) -> Real {
        let factorial: i64 = (1..=k as i64).product();
        &self.coeffs[k] * &Real::from_int(factorial, self.precision())
    }

    pub fn precision(&self) -> Precision {
        self.coeffs
            .iter()
            .map(Real::precision)
            .max()
            .unwrap_or_default()
    }

    fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Real::is_zero)
    }

    fn int(&self, n: i64) -> Real {
        Real::from_int(n, self.precision())
    }

    fn map(&self, f: impl Fn(&Real) -> Real) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| f(&self.coeffs[k])),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Real, &Real) -> Real) -> Self {
        Self {
            coeffs: std::array::from_fn(|k| f(&self.coeffs[k], &other.coeffs[k])),
        }
    }

    pub fn scale(&self, c: &Real) -> Self {
        self.map(|a| a * c)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, JetError> {
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(JetError::DivisionByZero);
        }
        // q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0
        let mut q: Vec<Real> = Vec::with_capacity(JET_LEN);
        for k in 0..JET_LEN {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc = acc - &rhs.coeffs[j] * &q[k - j];
            }
            q.push(acc / b0);
        }
        Ok(Self {
            coeffs: q.try_into().expect("five coefficients"),
        })
    }

    /// `self^n` for an integer `n` by repeated squaring; a negative `n`
    /// divides into one.
    pub fn powi(&self, n: i64) -> Result<Self, JetError> {
        let mut base = self.clone();
        let mut result = Self::constant(self.int(1));
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if n < 0 {
            Self::constant(self.int(1)).checked_div(&result)
        } else {
            Ok(result)
        }
    }

    /// `self^exponent`. Constant integer exponents allow any base (negative
    /// powers still need a nonzero value); everything else requires a
    /// positive base.
    pub fn pow(&self, exponent: &Self) -> Result<Self, JetError> {
        if exponent.is_constant() {
            if let Some(n) = exponent.coeffs[0].to_small_int() {
                return self.powi(n);
            }
        }
        if !self.coeffs[0].is_positive() {
            return Err(JetError::Domain("non-integer power of a non-positive base"));
        }
        Ok((exponent * &self.ln()?).exp())
    }

    pub fn exp(&self) -> Self {
        // b' = a' b  =>  k b_k = sum_{j=1..k} j a_j b_{k-j}
        let mut b: Vec<Real> = vec![self.coeffs[0].exp()];
        for k in 1..JET_LEN {
            let mut acc = Real::zero(self.precision());
            for j in 1..=k {
                acc = acc + &self.int(j as i64) * &self.coeffs[j] * &b[k - j];
            }
            b.push(acc / self.int(k as i64));
        }
        Self {
            coeffs: b.try_into().expect("five coefficients"),
        }
    }

    pub fn ln(&self) -> Result<Self, JetError> {
        let a0 = &self.coeffs[0];
        if !a0.is_positive() {
            return Err(JetError::Domain("logarithm of a non-positive value"));
        }
        // a b' = a'  =>  b_k = (a_k - (1/k) sum_{j=1..k-1} j b_j a_{k-j}) / a_0
        let mut b: Vec<Real> = vec![a0.ln()];
        for k in 1..JET_LEN {
            let mut acc = Real::zero(self.precision());
            for (j, bj) in b.iter().enumerate().take(k).skip(1) {
                acc = acc + &self.int(j as i64) * bj * &self.coeffs[k - j];
            }
            let next = (&self.coeffs[k] - acc / self.int(k as i64)) / a0;
            b.push(next);
        }
        Ok(Self {
            coeffs: b.try_into().expect("five coefficients"),
        })
    }

    /// Sine and cosine together; each recurrence feeds the other.
    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s: Vec<Real> = vec![self.coeffs[0].sin()];
        let mut c: Vec<Real> = vec![self.coeffs[0].cos()];
        for k in 1..JET_LEN {
            let mut sk = Real::zero(self.precision());
            let mut ck = Real::zero(self.precision());
            for j in 1..=k {
                let ja = &self.int(j as i64) * &self.coeffs[j];
                sk = sk + &ja * &c[k - j];
                ck = ck - &ja * &s[k - j];
            }
            let kk = self.int(k as i64);
            s.push(sk / &kk);
            c.push(ck / &kk);
        }
        (
            Self {
                coeffs: s.try_into().expect("five coefficients"),
            },
            Self {
                coeffs: c.try_into().expect("five coefficients"),
            },
        )
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sqrt(&self) -> Result<Self, JetError> {
        let a0 = &self.coeffs[0];
        if !a0.is_positive() {
            return Err(JetError::Domain("square root of a non-positive value"));
        }
        // b^2 = a  =>  b_k = (a_k - sum_{j=1..k-1} b_j b_{k-j}) / (2 b_0)
        let mut b: Vec<Real> = vec![a0.sqrt()];
        let two_b0 = &self.int(2) * &b[0];
        for k in 1..JET_LEN {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc - &b[j] * &b[k - j];
            }
            b.push(acc / &two_b0);
        }
        Ok(Self {
            coeffs: b.try_into().expect("five coefficients"),
        })
    }
}

/// The identity jet `[x, 1, 0, 0, 0]`.
pub fn jet_variable(x: Real) -> Jet4 {
    Jet4::variable(x)
}

pub fn jet_arith(op: JetOp, lhs: &Jet4, rhs: &Jet4) -> Result<Jet4, JetError> {
    match op {
        JetOp::Add => Ok(lhs + rhs),
        JetOp::Sub => Ok(lhs - rhs),
        JetOp::Mul => Ok(lhs * rhs),
        JetOp::Div => lhs.checked_div(rhs),
        JetOp::Pow => lhs.pow(rhs),
        JetOp::Neg => Ok(-lhs),
    }
}

pub fn jet_func(f: JetFunc, arg: &Jet4) -> Result<Jet4, JetError> {
    match f {
        JetFunc::Exp => Ok(arg.exp()),
        JetFunc::Ln => arg.ln(),
        JetFunc::Sin => Ok(arg.sin()),
        JetFunc::Cos => Ok(arg.cos()),
        JetFunc::Sqrt => arg.sqrt(),
    }
}

impl fmt::Debug for Jet4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Add for &Jet4 {
    type Output = Jet4;
    fn add(self, rhs: &Jet4) -> Jet4 {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet4 {
    type Output = Jet4;
    fn sub(self, rhs: &Jet4) -> Jet4 {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet4 {
    type Output = Jet4;
    fn mul(self, rhs: &Jet4) -> Jet4 {
        let prec = self.precision().max(rhs.precision());
        Jet4 {
            // Terms are paired symmetrically so the rounded result does not
            // depend on operand order.
            coeffs: std::array::from_fn(|k| {
                (0..=k / 2).fold(Real::zero(prec), |acc, j| {
                    let (a, b) = (&self.coeffs, &rhs.coeffs);
                    if j == k - j {
                        acc + &a[j] * &b[j]
                    } else {
                        acc + (&a[j] * &b[k - j] + &a[k - j] * &b[j])
                    }
                })
            }),
        }
    }
}

impl Neg for &Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        self.map(|a| -a)
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for Jet4 {
            type Output = Jet4;
            fn $method(self, rhs: Jet4) -> Jet4 {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Jet4 {
    type Output = Jet4;
    fn neg(self) -> Jet4 {
        -&self
    }
}
