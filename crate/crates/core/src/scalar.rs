//! Exact scalar fields: arbitrary-precision rationals and Gaussian rationals.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `re + i·im` with rational parts.
pub type GaussianRational = Complex<Rational>;

/// Field of coefficients used by forms, operators and the linear algebra.
///
/// Implemented for [`Rational`] and [`GaussianRational`]; everything generic
/// over `Scalar` runs unchanged over either field.
pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + Send + Sync + 'static {
    fn from_rational(r: Rational) -> Self;
    fn conj(&self) -> Self;
    fn to_gaussian(&self) -> GaussianRational;
    /// Canonical string: `p/q` (or `p`) for rationals, `a+bi` for Gaussian ones.
    fn to_canonical(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_gaussian(&self) -> GaussianRational {
        Complex::new(self.clone(), Rational::zero())
    }

    fn to_canonical(&self) -> String {
        self.to_string()
    }
}

impl Scalar for GaussianRational {
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_gaussian(&self) -> GaussianRational {
        self.clone()
    }

    fn to_canonical(&self) -> String {
        if self.im.is_zero() {
            return self.re.to_string();
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-self.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", self.im)
        };
        if self.re.is_zero() {
            im
        } else if self.im.is_negative() {
            format!("{}{}", self.re, im)
        } else {
            format!("{}+{}", self.re, im)
        }
    }
}

/// The imaginary unit.
pub fn i_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` (optional sign, `q != 0`) into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Nearest rational with denominator at most `max_den` within `tol`, smallest
/// denominator first.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    for q in 1..=max_den {
        let p = (x * q as f64).round();
        if (x - p / q as f64).abs() <= tol {
            return Some(ratio(p as i64, q));
        }
    }
    None
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
