//! Input document: a JSON object `{"vectors": [[...], ...]}` whose
//! entries are integers, decimals, or "p/q" rational strings.
//!
//! Numbers are kept as literal text until the arithmetic mode is known,
//! so exact mode never round-trips through `f64`: integers and rational
//! strings parse to rationals directly, and a finite decimal like
//! `-2.75e1` converts to the exact fraction `-55/2`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;

use gramlaw::{Generators, ModelError, Rational, Scalar, Vector};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}")]
    Unreadable {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON")]
    Json(#[from] serde_json::Error),
    #[error("\"vectors\" must hold at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("ragged rows: row {index} has {got} entries, expected {expected}")]
    Ragged {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("row {row}, entry {col}: {detail}")]
    BadEntry {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One not-yet-committed numeric literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Integer(String),
    Decimal(String),
    Ratio(String, String),
}

impl Entry {
    fn classify(text: &str, row: usize, col: usize) -> Result<Entry, InputError> {
        let bad = |detail: String| InputError::BadEntry {
            row,
            col,
            detail,
        };
        if let Some((p, q)) = text.split_once('/') {
            let p = p.trim();
            let q = q.trim();
            BigInt::from_str(p).map_err(|_| bad(format!("bad numerator {p:?}")))?;
            let qi = BigInt::from_str(q).map_err(|_| bad(format!("bad denominator {q:?}")))?;
            if qi == BigInt::from(0) {
                return Err(bad("zero denominator".into()));
            }
            return Ok(Entry::Ratio(p.to_string(), q.to_string()));
        }
        if text.contains(['.', 'e', 'E']) {
            f64::from_str(text).map_err(|_| bad(format!("not a number: {text:?}")))?;
            Ok(Entry::Decimal(text.to_string()))
        } else {
            BigInt::from_str(text).map_err(|_| bad(format!("not a number: {text:?}")))?;
            Ok(Entry::Integer(text.to_string()))
        }
    }

    fn to_rational(&self) -> Rational {
        match self {
            Entry::Integer(s) => Rational::from_integer(BigInt::from_str(s).expect("validated")),
            Entry::Ratio(p, q) => Rational::new(
                BigInt::from_str(p).expect("validated"),
                BigInt::from_str(q).expect("validated"),
            ),
            Entry::Decimal(s) => decimal_to_rational(s).expect("validated"),
        }
    }

    fn to_float(&self) -> f64 {
        match self {
            Entry::Integer(s) | Entry::Decimal(s) => f64::from_str(s).expect("validated"),
            Entry::Ratio(p, q) => {
                f64::from_str(p).expect("validated") / f64::from_str(q).expect("validated")
            }
        }
    }
}

/// Exact value of a finite decimal literal: shift the point out and put
/// the ten-power in the numerator or denominator.
fn decimal_to_rational(text: &str) -> Option<Rational> {
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, i64::from_str(e).ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::from_str(&format!("{int_part}{frac_part}")).ok()?;
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
    })
}

#[derive(Deserialize)]
struct RawDocument {
    vectors: Vec<Vec<serde_json::Value>>,
}

/// Parsed but mode-uncommitted document.
pub struct InputDocument {
    pub rows: Vec<Vec<Entry>>,
    /// True when any entry is written in decimal notation; such files
    /// default to float mode.
    pub any_decimal: bool,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, InputError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.vectors.len() < 2 {
            return Err(InputError::TooFewRows(raw.vectors.len()));
        }
        let expected = raw.vectors[0].len();
        let mut rows = Vec::with_capacity(raw.vectors.len());
        let mut any_decimal = false;
        for (row_idx, raw_row) in raw.vectors.iter().enumerate() {
            if raw_row.len() != expected {
                return Err(InputError::Ragged {
                    index: row_idx,
                    got: raw_row.len(),
                    expected,
                });
            }
            let mut row = Vec::with_capacity(expected);
            for (col, value) in raw_row.iter().enumerate() {
                let text = match value {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    other => {
                        return Err(InputError::BadEntry {
                            row: row_idx,
                            col,
                            detail: format!("expected number or string, got {other}"),
                        })
                    }
                };
                let entry = Entry::classify(text.trim(), row_idx, col)?;
                any_decimal |= matches!(entry, Entry::Decimal(_));
                row.push(entry);
            }
            rows.push(row);
        }
        Ok(InputDocument { rows, any_decimal })
    }

    pub fn load(path: &str) -> Result<InputDocument, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Unreadable {
            path: path.to_string(),
            source,
        })?;
        InputDocument::parse(&text)
    }

    /// Commits the document to one arithmetic mode and validates the
    /// family (independence included).
    pub fn to_generators<S: Scalar>(&self) -> Result<Generators<S>, InputError> {
        let vectors: Vec<Vector<S>> = self
            .rows
            .iter()
            .map(|row| {
                Vector::new(
                    row.iter()
                        .map(|e| match S::MODE {
                            gramlaw::ArithmeticMode::Exact => {
                                scalar_from_rational::<S>(e.to_rational())
                            }
                            gramlaw::ArithmeticMode::Float => scalar_from_f64::<S>(e.to_float()),
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(Generators::new(vectors)?)
    }
}

fn scalar_from_rational<S: Scalar>(value: Rational) -> S {
    // exact mode: S is Rational itself; recover it through the numerator
    // and denominator to stay inside the Scalar interface
    let numer = value.numer().clone();
    let denom = value.denom().clone();
    scalar_from_bigint::<S>(numer) / scalar_from_bigint::<S>(denom)
}

fn scalar_from_bigint<S: Scalar>(value: BigInt) -> S {
    use num_traits::ToPrimitive;
    if let Some(small) = value.to_i128() {
        return S::from_int(small);
    }
    // digit-by-digit fold for integers beyond i128
    let negative = value < BigInt::from(0);
    let text = value.magnitude().to_string();
    let mut acc = S::from_int(0);
    let ten = S::from_int(10);
    for c in text.chars() {
        acc = acc * ten.clone() + S::from_int(i128::from(c.to_digit(10).unwrap()));
    }
    if negative {
        -acc
    } else {
        acc
    }
}

/// Rebuilds a float as `mantissa * 2^exp`; every step is exact for both
/// scalar modes, so the float-mode entry equals the parsed `f64` bit for
/// bit.
fn scalar_from_f64<S: Scalar>(value: f64) -> S {
    if value == 0.0 {
        return S::from_int(0);
    }
    let (mantissa, exponent) = {
        let bits = value.to_bits();
        let sign = if bits >> 63 == 1 { -1i128 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        if exp == 0 {
            (sign * frac as i128, -1074i64)
        } else {
            (sign * (frac | (1 << 52)) as i128, exp - 1075)
        }
    };
    let m = S::from_int(mantissa);
    let two = S::from_int(2);
    let mut acc = m;
    if exponent >= 0 {
        for _ in 0..exponent {
            acc = acc * two.clone();
        }
    } else {
        for _ in 0..(-exponent) {
            acc = acc / two.clone();
        }
    }
    acc
}
