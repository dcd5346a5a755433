//! Extended-precision scalars and degree-4 Taylor jets.
//!
//! [`Real`] wraps a binary big float carrying an explicit decimal
//! [`Precision`]; [`Jet4`] propagates a value and its first four
//! Taylor-normalized derivatives through arithmetic and the elementary
//! functions.

mod jet;
mod precision;
mod real;

pub use jet::{jet_arith, jet_func, jet_variable, Jet4, JetError, JetFunc, JetOp, JET_LEN};
pub use precision::{Precision, PrecisionError};
pub use real::{ParseRealError, Real, SciDigits};
