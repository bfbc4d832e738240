//! Field elements used by every other module.
//!
//! A [`Scalar`] is either an exact rational or a machine float that carries
//! its own zero tolerance. Exact values promote to floats when the two kinds
//! meet in an operation, so integer literals built with [`Scalar::from`] can
//! be mixed freely with either kind.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default zero tolerance for float mode.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const MAX_DECIMAL_EXPONENT: u32 = 4096;

/// Arithmetic mode for parsing and generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumberMode {
    Exact,
    Float { tolerance: f64 },
}

impl Default for NumberMode {
    fn default() -> Self {
        NumberMode::Exact
    }
}

impl NumberMode {
    pub fn float() -> Self {
        NumberMode::Float {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// Converts an exact value into this mode.
    pub fn coerce(&self, s: Scalar) -> Scalar {
        match self {
            NumberMode::Exact => s,
            NumberMode::Float { tolerance } => Scalar::float(s.to_f64(), *tolerance),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float { value: f64, tol: f64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    /// `num / den` as an exact rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// A float value with the given zero tolerance (clamped to be positive).
    pub fn float(value: f64, tol: f64) -> Self {
        let tol = if tol > 0.0 { tol } else { DEFAULT_TOLERANCE };
        Scalar::Float { value, tol }
    }

    /// Parses `"a/b"`, an integer, or a decimal literal.
    ///
    /// In exact mode decimals are read as exact rationals (`"0.25"` is 1/4).
    pub fn parse(text: &str, mode: NumberMode) -> Result<Self> {
        let exact = parse_exact(text.trim())?;
        Ok(mode.coerce(exact))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Zero test: exact comparison, or `|value| <= tol` in float mode.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float { value, tol } => value.abs() <= *tol,
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &Scalar::one()).is_zero()
    }

    /// Sign under the mode's zero test: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        match self {
            Scalar::Exact(r) => {
                if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float { value, .. } => {
                if *value > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float { value, .. } => *value,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float { value, tol } => Scalar::Float {
                value: value.abs(),
                tol: *tol,
            },
        }
    }

    pub fn tolerance(&self) -> Option<f64> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Float { tol, .. } => Some(*tol),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float { .. } => None,
        }
    }

    /// Multiplicative inverse, or `None` for a zero value.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Float { value, tol } => Scalar::Float {
                value: 1.0 / value,
                tol: *tol,
            },
        })
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => {
                let tol = match (self.tolerance(), rhs.tolerance()) {
                    (Some(a), Some(b)) => a.max(b),
                    (Some(t), None) | (None, Some(t)) => t,
                    (None, None) => unreachable!(),
                };
                Scalar::Float {
                    value: float(self.to_f64(), rhs.to_f64()),
                    tol,
                }
            }
        }
    }
}

fn parse_exact(text: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("malformed number `{text}`"));
    if text.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(Scalar::Exact(BigRational::new(num, den)));
    }
    if let Ok(i) = text.parse::<BigInt>() {
        return Ok(Scalar::Exact(BigRational::from_integer(i)));
    }
    // Decimal with optional exponent, read exactly.
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (
            &text[..pos],
            text[pos + 1..].parse::<i32>().map_err(|_| bad())?,
        ),
        None => (text, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > MAX_DECIMAL_EXPONENT {
        return Err(Error::Parse(format!("exponent out of range in `{text}`")));
    }
    let power = BigRational::from_integer(num_traits::pow(BigInt::from(10), scale.unsigned_abs() as usize));
    if scale > 0 {
        value *= power;
    } else {
        value /= power;
    }
    if negative {
        value = -value;
    }
    Ok(Scalar::Exact(value))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s, NumberMode::Exact)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

/// Exact values print as `a` or `a/b`; floats use Rust's shortest round-trip form.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Equality under the zero test of the difference.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some((self - other).signum().cmp(&0))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $exact:expr, $float:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, $exact, $float)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| a * b, |a, b| a * b);
// Division by an exact zero panics, matching BigRational; callers check `recip` first.
forward_binop!(Div, div, |a, b| a / b, |a, b| a / b);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float { value, tol } => Scalar::Float {
                value: -value,
                tol: *tol,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
