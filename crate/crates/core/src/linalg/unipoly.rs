use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{format_rational, Rational, Scalar};

/// Univariate polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t + c`
    pub fn t_plus(c: Rational) -> Self {
        UniPoly::new(vec![c, Rational::one()])
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("({})*t", format_rational(c)),
                _ => format!("({})*t^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::constant(Rational::one())
    }
}

impl Add for UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.0.len().max(rhs.0.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Scalar for UniPoly {
    fn from_bigint(c: &BigInt) -> Self {
        UniPoly::constant(Rational::from_integer(c.clone()))
    }
}
