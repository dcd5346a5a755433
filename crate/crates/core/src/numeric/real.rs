use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::Precision;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{text}` is not a decimal number")]
pub struct ParseRealError {
    pub text: String,
}

/// A real number carried at a fixed decimal [`Precision`].
///
/// Binary operations round to the larger precision of the two operands, so
/// mixing a working-precision iterate with a doubled-precision reference root
/// keeps the reference's accuracy.
#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    prec: Precision,
}

/// Decimal scientific digits `d0.d1d2... × 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SciDigits {
    pub negative: bool,
    /// Significant digits, most significant first; empty for zero.
    pub digits: Vec<u8>,
    pub exponent: i64,
}

impl Real {
    fn wrap(value: BigFloat, prec: Precision) -> Self {
        Self { value, prec }
    }

    pub fn from_int(n: i64, prec: Precision) -> Self {
        Self::wrap(BigFloat::from_i64(n, prec.bits()), prec)
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_int(1, prec)
    }

    /// Parses an unsigned or signed decimal literal (`2.87`, `1e-3`, `-0.5`)
    /// directly at the target precision.
    pub fn parse_decimal(text: &str, prec: Precision) -> Result<Self, ParseRealError> {
        let trimmed = text.trim();
        let well_formed = {
            let body = trimmed.strip_prefix(['-', '+']).unwrap_or(trimmed);
            let (mantissa, exponent) = match body.find(['e', 'E']) {
                Some(i) => (&body[..i], Some(&body[i + 1..])),
                None => (body, None),
            };
            let mut parts = mantissa.splitn(2, '.');
            let int_part = parts.next().unwrap_or("");
            let frac_part = parts.next().unwrap_or("");
            let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
            let exp_ok = exponent.is_none_or(|e| {
                let e = e.strip_prefix(['-', '+']).unwrap_or(e);
                !e.is_empty() && digits_ok(e)
            });
            !(int_part.is_empty() && frac_part.is_empty())
                && digits_ok(int_part)
                && digits_ok(frac_part)
                && exp_ok
        };
        if !well_formed {
            return Err(ParseRealError {
                text: text.to_string(),
            });
        }
        let value = with_consts(|cc| BigFloat::parse(trimmed, Radix::Dec, prec.bits(), RM, cc));
        if value.is_nan() || value.is_inf() {
            return Err(ParseRealError {
                text: text.to_string(),
            });
        }
        Ok(Self::wrap(value, prec))
    }

    /// Exact ratio `num/den` rounded once to the target precision.
    pub fn from_ratio(ratio: &BigRational, prec: Precision) -> Self {
        let num = Self::from_bigint(ratio.numer(), prec);
        let den = Self::from_bigint(ratio.denom(), prec);
        &num / &den
    }

    fn from_bigint(n: &BigInt, prec: Precision) -> Self {
        match i64::try_from(n) {
            Ok(small) => Self::from_int(small, prec),
            Err(_) => Self::parse_decimal(&n.to_string(), prec).expect("integer literal"),
        }
    }

    /// `10^k` at the given precision.
    pub fn pow10(k: i32, prec: Precision) -> Self {
        Self::parse_decimal(&format!("1e{k}"), prec).expect("power of ten literal")
    }

    pub fn pi(prec: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(prec.bits(), RM)), prec)
    }

    pub fn e(prec: Precision) -> Self {
        Self::wrap(with_consts(|cc| cc.e(prec.bits(), RM)), prec)
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Re-rounds to a different precision.
    pub fn with_precision(&self, prec: Precision) -> Self {
        let mut value = self.value.clone();
        // Non-finite values carry no mantissa to re-round.
        let _ = value.set_precision(prec.bits(), RM);
        Self::wrap(value, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.value.is_nan() || self.value.is_inf())
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.value.is_positive() && !self.value.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.value.is_negative() && !self.value.is_nan()
    }

    pub fn is_integer(&self) -> bool {
        self.is_finite() && self.value.is_int()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.value.sqrt(self.prec.bits(), RM), self.prec)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), self.prec)
    }

    pub fn ln(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.prec)
    }

    pub fn sin(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), self.prec)
    }

    pub fn cos(&self) -> Self {
        let p = self.prec.bits();
        Self::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), self.prec)
    }

    /// `self^n` for an integer exponent by repeated squaring. A negative
    /// exponent takes the reciprocal, which is infinite at zero.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec.bits();
        let magnitude = usize::try_from(n.unsigned_abs()).expect("exponent fits in usize");
        let positive = self.value.powi(magnitude, p, RM);
        if n < 0 {
            Self::wrap(positive.reciprocal(p, RM), self.prec)
        } else {
            Self::wrap(positive, self.prec)
        }
    }

    /// General power `self^exponent`; the base must be positive unless the
    /// exponent is an integer, in which case [`Real::powi`] is used.
    pub fn pow(&self, exponent: &Self) -> Self {
        if let Some(n) = exponent.to_small_int() {
            return self.powi(n).with_precision(self.prec.max(exponent.prec));
        }
        let prec = self.prec.max(exponent.prec);
        let p = prec.bits();
        Self::wrap(
            with_consts(|cc| self.value.pow(&exponent.value, p, RM, cc)),
            prec,
        )
    }

    /// The integer value when `self` is an integer of moderate size.
    pub fn to_small_int(&self) -> Option<i64> {
        const LIMIT: i64 = 1 << 20;
        if !self.is_integer() || self.abs() > Self::from_int(LIMIT, self.prec) {
            return None;
        }
        let digits = self.sci_digits_exact();
        let mut n: i64 = 0;
        for (i, d) in digits.digits.iter().enumerate() {
            if i as i64 > digits.exponent {
                break;
            }
            n = n * 10 + i64::from(*d);
        }
        let scale = digits.exponent + 1 - digits.digits.len() as i64;
        for _ in 0..scale.max(0) {
            n *= 10;
        }
        Some(if digits.negative { -n } else { n })
    }

    /// Distance to the next representable value of the same magnitude.
    pub fn ulp(&self) -> Self {
        let bits = self
            .value
            .mantissa_max_bit_len()
            .unwrap_or(self.prec.bits());
        let exponent = i64::from(self.value.exponent().unwrap_or(0));
        let shift = exponent - bits as i64;
        let two = Self::from_int(2, self.prec);
        two.powi(shift)
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Full decimal expansion of the stored binary value.
    fn sci_digits_exact(&self) -> SciDigits {
        let (sign, mut digits, exponent) =
            with_consts(|cc| self.value.convert_to_radix(Radix::Dec, RM, cc))
                .expect("decimal conversion of a finite value");
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let leading = digits.iter().take_while(|d| **d == 0).count();
        digits.drain(..leading);
        SciDigits {
            negative: sign == Sign::Neg && !digits.is_empty(),
            exponent: i64::from(exponent) - 1 - leading as i64,
            digits,
        }
    }

    /// Rounds to `significant` decimal digits with ties to even.
    pub fn sci_digits(&self, significant: usize) -> SciDigits {
        assert!(significant > 0, "at least one significant digit");
        let exact = self.sci_digits_exact();
        if exact.digits.is_empty() {
            return SciDigits {
                negative: false,
                digits: vec![0; significant],
                exponent: 0,
            };
        }
        let mut exponent = exact.exponent;
        let mut kept: Vec<u8> = exact.digits.iter().copied().take(significant).collect();
        kept.resize(significant, 0);
        let round_up = match exact.digits.get(significant) {
            None => false,
            Some(&d) if d > 5 => true,
            Some(&d) if d < 5 => false,
            Some(_) => {
                let sticky = exact.digits[significant + 1..].iter().any(|d| *d != 0);
                sticky || kept.last().is_some_and(|d| d % 2 == 1)
            }
        };
        if round_up {
            let mut i = significant;
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    kept.pop();
                    exponent += 1;
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
        SciDigits {
            negative: exact.negative,
            digits: kept,
            exponent,
        }
    }

    /// Scientific notation such as `4.9651e0` or `-1.2500e-7`.
    pub fn to_sci_string(&self, significant: usize) -> String {
        if !self.is_finite() {
            return if self.value.is_nan() {
                "NaN".into()
            } else if self.value.is_inf_neg() {
                "-inf".into()
            } else {
                "inf".into()
            };
        }
        let sci = self.sci_digits(significant);
        let mut out = String::new();
        if sci.negative {
            out.push('-');
        }
        out.push(char::from(b'0' + sci.digits[0]));
        if sci.digits.len() > 1 {
            out.push('.');
            out.extend(sci.digits[1..].iter().map(|d| char::from(b'0' + d)));
        }
        out.push('e');
        out.push_str(&sci.exponent.to_string());
        out
    }

    /// Nearest `f64`, for display and coarse comparisons only.
    pub fn to_f64(&self) -> f64 {
        if !self.is_finite() {
            return f64::NAN;
        }
        self.to_sci_string(20).parse().unwrap_or(f64::NAN)
    }

    /// Base-10 logarithm of the magnitude as an `f64`, robust for values far
    /// outside the `f64` exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let sci = self.sci_digits(17);
        let mantissa: f64 = sci
            .digits
            .iter()
            .rev()
            .fold(0.0, |acc, d| acc / 10.0 + f64::from(*d));
        mantissa.log10() + sci.exponent as f64
    }

    /// Exact rational value of the nearest decimal with `significant` digits;
    /// test helper for comparing across precisions.
    pub fn to_rational(&self, significant: usize) -> BigRational {
        let sci = self.sci_digits(significant);
        let mut n = BigInt::zero();
        for d in &sci.digits {
            n = n * 10 + BigInt::from(*d);
        }
        if sci.negative {
            n = -n;
        }
        let shift = sci.exponent - (sci.digits.len() as i64 - 1);
        let ten = BigInt::from(10);
        if shift >= 0 {
            BigRational::from_integer(n * num_traits::pow(ten, shift as usize))
        } else {
            BigRational::new(n, num_traits::pow(ten, (-shift) as usize))
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci_string(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(30).max(1);
        f.pad(&self.to_sci_string(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(self.value.$method(&rhs.value, prec.bits(), RM), prec)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.prec)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p300() -> Precision {
        Precision::default()
    }

    fn r(s: &str) -> Real {
        Real::parse_decimal(s, p300()).unwrap()
    }

    #[test]
    fn decimal_literals_are_exact_at_working_precision() {
        // 2.87 * 100 must be 287 to the last digit, unlike an f64 round trip.
        let v = r("2.87") * Real::from_int(100, p300());
        let diff = (v - Real::from_int(287, p300())).abs();
        assert!(diff < Real::pow10(-295, p300()));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", ".", "1e", "1.2.3", "abc", "1e+", "--1"] {
            assert!(Real::parse_decimal(bad, p300()).is_err(), "{bad}");
        }
        assert!(Real::parse_decimal("1e-3", p300()).is_ok());
        assert!(Real::parse_decimal(".5", p300()).is_ok());
    }

    #[test]
    fn pi_and_e_digits() {
        assert_eq!(
            Real::pi(p300()).to_sci_string(31),
            "3.141592653589793238462643383280e0"
        );
        assert_eq!(Real::e(p300()).to_sci_string(20), "2.7182818284590452354e0");
    }

    #[test]
    fn exp_of_minus_five() {
        assert_eq!(r("-5").exp().to_sci_string(5), "6.7379e-3");
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(r("1.25").to_sci_string(2), "1.2e0");
        assert_eq!(r("1.35").to_sci_string(2), "1.4e0");
        assert_eq!(r("1.2500001").to_sci_string(2), "1.3e0");
        assert_eq!(r("9.9996").to_sci_string(4), "1.000e1");
        assert_eq!(r("-0.000123456").to_sci_string(3), "-1.23e-4");
        assert_eq!(Real::zero(p300()).to_sci_string(3), "0.00e0");
    }

    #[test]
    fn integer_powers() {
        assert_eq!(r("-2").powi(3), r("-8"));
        assert_eq!(r("2").powi(-2), r("0.25"));
        assert_eq!(r("2").pow(&r("3").pow(&r("2"))), r("512"));
        assert_eq!(r("12").to_small_int(), Some(12));
        assert_eq!(r("-300").to_small_int(), Some(-300));
        assert_eq!(r("0.5").to_small_int(), None);
    }

    #[test]
    fn mixed_precision_uses_the_larger() {
        let hi = Precision::new(600).unwrap();
        let third_hi = Real::one(hi) / Real::from_int(3, hi);
        let sum = &third_hi + &Real::zero(p300());
        assert_eq!(sum.precision(), hi);
    }

    #[test]
    fn ulp_tracks_magnitude() {
        let one = Real::one(p300());
        let ulp = one.ulp();
        assert!(ulp.is_positive());
        assert!((&one + &ulp) > one);
        let half_ulp = &ulp / &Real::from_int(4, p300());
        assert!((&one + &half_ulp) == one);
    }

    #[test]
    fn log10_of_tiny_values() {
        let tiny = Real::pow10(-250, p300()) * r("3");
        assert!((tiny.log10_abs() - (-250.0 + 3f64.log10())).abs() < 1e-12);
    }
}
