use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::weight::{parse_rational, WeightFn, WeightSpecError};

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum MethodKind {
    Newton,
    Weerakoon,
    Homeier,
    Bisectrix,
    InverseBisectrix,
    Chun3,
    /// Two-step family `y = x - a f/f'`, `x+ = x - (3 - t)/2 · f/f' · G(t)`
    /// with `t = f'(y)/f'(x)`.
    WeightedFourth {
        weight: WeightFn,
        a: BigRational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MethodParseError {
    #[error("unknown method `{0}`; expected one of newton, weerakoon, homeier, bisectrix, inverse-bisectrix, chun3, weighted4")]
    UnknownMethod(String),
    #[error("step fraction `{0}` is not a rational number")]
    BadStepFraction(String),
    #[error(transparent)]
    Weight(#[from] WeightSpecError),
    #[error("option `{0}` only applies to weighted4")]
    NotWeighted(String),
}

impl MethodKind {
    /// The optimal instance: Chun weight with `a = 2/3`.
    pub fn weighted_fourth_default() -> Self {
        MethodKind::WeightedFourth {
            weight: WeightFn::chun(),
            a: Self::default_step_fraction(),
        }
    }

    pub fn default_step_fraction() -> BigRational {
        BigRational::new(BigInt::from(2), BigInt::from(3))
    }

    /// The seven rows of the benchmark tables, in printed order.
    pub fn catalogue() -> Vec<MethodKind> {
        vec![
            MethodKind::Newton,
            MethodKind::Weerakoon,
            MethodKind::Homeier,
            MethodKind::Bisectrix,
            MethodKind::Chun3,
            MethodKind::InverseBisectrix,
            MethodKind::weighted_fourth_default(),
        ]
    }

    /// Command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            MethodKind::Newton => "newton",
            MethodKind::Weerakoon => "weerakoon",
            MethodKind::Homeier => "homeier",
            MethodKind::Bisectrix => "bisectrix",
            MethodKind::InverseBisectrix => "inverse-bisectrix",
            MethodKind::Chun3 => "chun3",
            MethodKind::WeightedFourth { .. } => "weighted4",
        }
    }

    /// Human-readable row label.
    pub fn label(&self) -> &'static str {
        match self {
            MethodKind::Newton => "Newton",
            MethodKind::Weerakoon => "Weerakoon-Fernando",
            MethodKind::Homeier => "Homeier",
            MethodKind::Bisectrix => "Bisectrix Newton",
            MethodKind::InverseBisectrix => "Inverse bisectrix",
            MethodKind::Chun3 => "Chun (third order)",
            MethodKind::WeightedFourth { .. } => "Weighted fourth order",
        }
    }

    pub fn theoretical_order(&self) -> u32 {
        match self {
            MethodKind::Newton => 2,
            MethodKind::WeightedFourth { .. } => 4,
            _ => 3,
        }
    }

    /// Function-plus-derivative evaluations per iteration.
    pub fn evals_per_iter(&self) -> u32 {
        match self {
            MethodKind::Newton => 2,
            _ => 3,
        }
    }

    /// False for a weighted variant whose step fraction or weight falls
    /// outside the conditions that guarantee order four.
    pub fn order_is_proven(&self) -> bool {
        match self {
            MethodKind::WeightedFourth { weight, a } => {
                *a == Self::default_step_fraction() && weight.satisfies_conditions()
            }
            _ => true,
        }
    }

    /// Whether iterates are unchanged when `f` is scaled by a constant.
    pub fn is_scale_invariant(&self) -> bool {
        !matches!(self, MethodKind::Bisectrix | MethodKind::InverseBisectrix)
    }

    /// Parses a method name plus optional `weight=` / `a=` settings, which
    /// are only valid for `weighted4`.
    pub fn from_parts(
        name: &str,
        weight: Option<&str>,
        a: Option<&str>,
    ) -> Result<Self, MethodParseError> {
        let mut kind: MethodKind = name.parse()?;
        if let MethodKind::WeightedFourth { weight: w, a: step } = &mut kind {
            if let Some(spec) = weight {
                *w = spec.parse()?;
            }
            if let Some(text) = a {
                let body = text.trim().strip_prefix("a=").unwrap_or(text.trim());
                *step = parse_rational(body)
                    .ok_or_else(|| MethodParseError::BadStepFraction(text.to_string()))?;
            }
        } else if let Some(opt) = weight.map(|_| "weight").or(a.map(|_| "a")) {
            return Err(MethodParseError::NotWeighted(opt.to_string()));
        }
        Ok(kind)
    }
}

impl FromStr for MethodKind {
    type Err = MethodParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "newton" => MethodKind::Newton,
            "weerakoon" => MethodKind::Weerakoon,
            "homeier" => MethodKind::Homeier,
            "bisectrix" => MethodKind::Bisectrix,
            "inverse-bisectrix" => MethodKind::InverseBisectrix,
            "chun3" => MethodKind::Chun3,
            "weighted4" => MethodKind::weighted_fourth_default(),
            other => return Err(MethodParseError::UnknownMethod(other.to_string())),
        })
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodKind::WeightedFourth { weight, a } => {
                let a = if a.denom() == &BigInt::from(1) {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                };
                write!(f, "weighted4(weight={weight}, a={a})")
            }
            other => f.write_str(other.name()),
        }
    }
}
