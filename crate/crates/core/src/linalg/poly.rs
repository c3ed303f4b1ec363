//! Sparse multivariate polynomials with integer coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Rational, Scalar};

/// A polynomial variable.
///
/// `L`, `X` and `R` are indexed by unordered node pairs and always stored
/// with `i < j`; `A` is an edge-conductance variable; `T` is the free parameter
/// of the resistance forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    L(u32, u32),
    X(u32, u32),
    R(u32, u32),
    A(u32),
    T,
}

impl Var {
    /// Response-matrix entry `L[i,j]` (1-based, order-insensitive).
    pub fn l(i: usize, j: usize) -> Var {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Var::L(a as u32, b as u32)
    }

    pub fn x(i: usize, j: usize) -> Var {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Var::X(a as u32, b as u32)
    }

    pub fn r(i: usize, j: usize) -> Var {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Var::R(a as u32, b as u32)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::L(i, j) => write!(f, "L[{i},{j}]"),
            Var::X(i, j) => write!(f, "X[{i},{j}]"),
            Var::R(i, j) => write!(f, "R[{i},{j}]"),
            Var::A(e) => write!(f, "a[{e}]"),
            Var::T => write!(f, "t"),
        }
    }
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Integer-coefficient polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c.into())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Terms in canonical (lexicographic monomial) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// True when no variable appears squared in any term.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|(_, e)| *e == 1))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Evaluates with every variable mapped to an exact rational.
    pub fn eval(&self, value: impl Fn(Var) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (v, e) in &m.0 {
                let x = value(*v);
                for _ in 0..*e {
                    t *= x.clone();
                }
            }
            total += t;
        }
        total
    }

    /// Replaces every variable by a polynomial.
    pub fn substitute(&self, image: impl Fn(Var) -> MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (v, e) in &m.0 {
                let x = image(*v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            out = out + t;
        }
        out
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, v: Var, k: u32) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m.degree_in(v) == k {
                let rest = Monomial(m.0.iter().filter(|(w, _)| *w != v).cloned().collect());
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Returns the single monomial and its coefficient when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                if m.0.is_empty() {
                    c.to_i64()
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(1)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self + (-rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Scalar for MultiPoly {
    fn from_bigint(c: &BigInt) -> Self {
        MultiPoly::constant(c.clone())
    }
}
