//! Scalar arithmetic substrate: exact rationals and `f64` under one trait.
//!
//! Every higher module is generic over [`Scalar`], so a whole pipeline runs
//! either in exact rational arithmetic or in `f64`, never a mixture; the
//! type system rules mode mixing out.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by `num-rational`.
pub type Rational = BigRational;

/// The arithmetic substrate a value lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithmeticMode {
    Exact,
    Float,
}

impl Display for ArithmeticMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithmeticMode::Exact => f.write_str("exact"),
            ArithmeticMode::Float => f.write_str("float"),
        }
    }
}

/// Number type the measure pipeline is generic over.
///
/// Implemented for [`Rational`] (exact mode) and `f64` (float mode).
/// `Signed` brings in the ring operations, `zero`/`one` and `abs`.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + Signed + Display + Debug + Send + Sync + 'static
{
    const MODE: ArithmeticMode;

    fn from_int(value: i128) -> Self;

    /// The exact integer value when the scalar is integral and fits,
    /// feeding the machine-integer determinant fast path. Float mode
    /// always returns `None`: float determinants stay on pivoted
    /// elimination.
    fn to_i128_exact(&self) -> Option<i128>;

    /// Closest `f64`, for human-readable output only.
    fn approx_f64(&self) -> f64;

    /// Mode-faithful text form: reduced fraction string in exact mode,
    /// 17 significant digits in float mode.
    fn render(&self) -> String;
}

impl Scalar for Rational {
    const MODE: ArithmeticMode = ArithmeticMode::Exact;

    fn from_int(value: i128) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn to_i128_exact(&self) -> Option<i128> {
        if self.denom().is_one() {
            self.numer().to_i128()
        } else {
            None
        }
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const MODE: ArithmeticMode = ArithmeticMode::Float;

    fn from_int(value: i128) -> Self {
        value as f64
    }

    fn to_i128_exact(&self) -> Option<i128> {
        None
    }

    fn approx_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format!("{self:.16e}")
    }
}
