use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::pfaffian::{pfaffian_by_expansion, pfaffian_by_elimination, AntisymmetricMatrix};
use crate::error::{Error, Result};

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

/// An exact commutative ring element usable as a matrix entry.
///
/// The two kernels have expansion-based defaults that work over any ring;
/// fields override them with elimination.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_bigint(c: &BigInt) -> Self;

    fn det_kernel(m: &Matrix<Self>) -> Self {
        m.det_by_minors()
    }

    fn pfaffian_kernel(m: &AntisymmetricMatrix<Self>) -> Self {
        pfaffian_by_expansion(m)
    }
}

impl Scalar for Rational {
    fn from_bigint(c: &BigInt) -> Self {
        Rational::from_integer(c.clone())
    }

    fn det_kernel(m: &Matrix<Self>) -> Self {
        m.det_bareiss()
    }

    fn pfaffian_kernel(m: &AntisymmetricMatrix<Self>) -> Self {
        pfaffian_by_elimination(m)
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::parse(format!("bad rational `{s}`")))?;
    Ok(r)
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
