//! Scalars the algebra runs over.
//!
//! Two implementations of [`Scalar`] exist: [`GaussianRational`], an exact
//! complex number with arbitrary-precision rational parts, and
//! [`Complex64`] for the optimisation-based searches. The mode is a type
//! parameter, so an expression can never silently mix the two.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
pub use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Real companion type of a [`Scalar`] (`BigRational` or `f64`).
pub trait Real:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Strictly below `-tol` (exact types ignore `tol`).
    fn is_negative_beyond(&self, tol: f64) -> bool;
    /// Parses an integer, `num/den`, or decimal string.
    fn parse_real(s: &str) -> Result<Self>;
    fn to_repr(&self) -> String;
}

impl Real for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_negative_beyond(&self, _tol: f64) -> bool {
        self.is_negative()
    }
    fn parse_real(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn to_repr(&self) -> String {
        rational_to_string(self)
    }
}

impl Real for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative_beyond(&self, tol: f64) -> bool {
        *self < -tol
    }
    fn parse_real(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: f64 = parse_f64(num)?;
            let d: f64 = parse_f64(den)?;
            if d == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(n / d)
        } else {
            parse_f64(s)
        }
    }
    fn to_repr(&self) -> String {
        format!("{self}")
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(format!("non-finite number: {s:?}")))
    }
}

/// Parses `"7"`, `"-3/4"`, `"2.5"` or `"1.5e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (
            &s[..pos],
            s[pos + 1..].parse::<i32>().map_err(|_| bad())?,
        ),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// `"n"` for integers, `"num/den"` otherwise.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Field element over which forms and matrices are built.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Real: Real;

    /// `true` for exact arithmetic.
    const EXACT: bool;
    /// Name used in serialized files.
    const MODE: &'static str;

    fn zero() -> Self;
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn i() -> Self {
        Self::from_ints(0, 1)
    }
    fn from_ints(re: i64, im: i64) -> Self;
    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, <Self::Real as Real>::zero())
    }
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> Self::Real;
    /// Exact zero test.
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;
    /// Equality: exact for exact scalars, relative tolerance otherwise.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
    /// Magnitude used to choose pivots in elimination.
    fn pivot_weight(&self) -> f64;

    fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 0),
            _ => Self::from_ints(0, -1),
        }
    }

    fn signed(self, sign: i8) -> Self {
        if sign < 0 {
            -self
        } else {
            self
        }
    }

    fn parse_parts(re: &str, im: &str) -> Result<Self> {
        Ok(Self::from_parts(
            <Self::Real as Real>::parse_real(re)?,
            <Self::Real as Real>::parse_real(im)?,
        ))
    }
}

/// Exact complex number `re + i·im` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// `(re_num/re_den) + i (im_num/im_den)`.
    pub fn from_fractions(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = rational_to_string(&self.re);
        if self.im.is_zero() {
            return f.write_str(&re);
        }
        let im = rational_to_string(&self.im.abs());
        let sign = if self.im.is_negative() { '-' } else { '+' };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}i")
        } else {
            write!(f, "{re}{sign}{im}i")
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self {
                re: self.re * rhs.re,
                im: Zero::zero(),
            };
        }
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Scalar for GaussianRational {
    type Real = BigRational;
    const EXACT: bool = true;
    const MODE: &'static str = "exact";

    fn zero() -> Self {
        Self::default()
    }
    fn from_ints(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }
    fn from_parts(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }
    fn re(&self) -> BigRational {
        self.re.clone()
    }
    fn im(&self) -> BigRational {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(Real::to_f64(&self.re), Real::to_f64(&self.im))
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Scalar for Complex64 {
    type Real = f64;
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_ints(re: i64, im: i64) -> Self {
        Complex64::new(re as f64, im as f64)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(<Complex64 as One>::one() / self)
        }
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = 1.0f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= tol * scale
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_forms() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("6/-8").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("2.5").unwrap(), q(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-4", "14", "3/7", "-22/5"] {
            assert_eq!(rational_to_string(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn gaussian_field_ops() {
        let a = GaussianRational::from_fractions(1, 2, -3, 1);
        let b = GaussianRational::from_ints(2, 5);
        let prod = a.clone() * b.clone();
        assert_eq!(prod, GaussianRational::from_fractions(16, 1, -7, 2));
        let inv = a.inv().unwrap();
        assert_eq!(a.clone() * inv, GaussianRational::one());
        assert_eq!(a.conj().conj(), a);
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(GaussianRational::i_pow(9), GaussianRational::i());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), GaussianRational::from_ints(-1, 0));
    }

    #[test]
    fn display_formats() {
        assert_eq!(GaussianRational::from_ints(-4, 0).to_string(), "-4");
        assert_eq!(GaussianRational::from_ints(0, -1).to_string(), "-1i");
        assert_eq!(GaussianRational::from_fractions(1, 2, 3, 1).to_string(), "1/2+3i");
    }

    #[test]
    fn float_parse_accepts_rationals() {
        assert_eq!(f64::parse_real("-1/4").unwrap(), -0.25);
        assert_eq!(f64::parse_real("2.5").unwrap(), 2.5);
        assert!(f64::parse_real("inf").is_err());
    }
}
