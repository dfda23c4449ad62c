//! Numeric abstraction shared by every exact computation.
//!
//! Probabilities, partition functions and transport costs are computed over
//! any [`Scalar`]: `f64`/`f32` for speed, [`BigRational`] when the answer has
//! to be exact.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Whether arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Magnitudes at or below this are treated as zero by iterative solvers.
    fn tolerance() -> Self;

    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("numerator representable") / Self::from_i64(den).expect("denominator representable")
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn powu(&self, k: usize) -> Self {
        num_traits::pow(self.clone(), k)
    }

    /// Parses integers, decimals (`0.25`, `1e-3`) and fractions (`3/4`).
    fn parse_scalar(text: &str) -> Result<Self>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-15
    }

    fn parse_scalar(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::Parse(text.into()))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::Parse(text.into()))?;
            if d == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {text}")));
            }
            return Ok(n / d);
        }
        text.parse().map_err(|_| Error::Parse(text.into()))
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-6
    }

    fn parse_scalar(text: &str) -> Result<Self> {
        f64::parse_scalar(text).map(|x| x as f32)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn parse_scalar(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n = parse_decimal(n.trim())?;
            let d = parse_decimal(d.trim())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text}")));
            }
            return Ok(n / d);
        }
        parse_decimal(text)
    }
}

/// Exact decimal parsing: `-12.5e-3` becomes `-125/10000`.
fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(text.to_string());
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = text[pos + 1..].parse().map_err(|_| bad())?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// `λ/(1+λ)`, the occupation probability of an unblocked vertex.
pub fn occupation_probability<T: Scalar>(lambda: &T) -> T {
    lambda.clone() / (T::one() + lambda.clone())
}
