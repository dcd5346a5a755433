use std::fmt;

use thiserror::Error;

/// Working precision in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    decimal_digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecisionError {
    #[error("precision of {0} digits is below the minimum of {min}", min = Precision::MIN_DIGITS)]
    TooLow(u32),
    #[error("precision of {0} digits exceeds the supported maximum of {max}", max = Precision::MAX_DIGITS)]
    TooHigh(u32),
}

impl Precision {
    pub const MIN_DIGITS: u32 = 50;
    pub const DEFAULT_DIGITS: u32 = 300;
    /// Upper bound keeps bit counts and decimal exponents comfortably in range.
    pub const MAX_DIGITS: u32 = 100_000;

    pub fn new(decimal_digits: u32) -> Result<Self, PrecisionError> {
        if decimal_digits < Self::MIN_DIGITS {
            Err(PrecisionError::TooLow(decimal_digits))
        } else if decimal_digits > Self::MAX_DIGITS {
            Err(PrecisionError::TooHigh(decimal_digits))
        } else {
            Ok(Self { decimal_digits })
        }
    }

    pub fn digits(self) -> u32 {
        self.decimal_digits
    }

    /// Binary mantissa length needed to hold `digits()` decimal digits.
    pub fn bits(self) -> usize {
        (f64::from(self.decimal_digits) * std::f64::consts::LOG2_10).ceil() as usize
    }

    /// Twice the digits, saturating at the maximum.
    pub fn doubled(self) -> Self {
        Self {
            decimal_digits: (self.decimal_digits * 2).min(Self::MAX_DIGITS),
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            decimal_digits: Self::DEFAULT_DIGITS,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} digits", self.decimal_digits)
    }
}
