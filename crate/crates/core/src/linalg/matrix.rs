use std::collections::HashMap;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix with dimensions fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix with the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != rhs.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| acc + self[(i, k)].clone() * rhs[(k, j)].clone())
        }))
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Matrix<T>> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::shape("cannot add matrices of different shapes"));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone()))
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Exact determinant; `det([])` is one.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::shape(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        Ok(T::det_kernel(self))
    }

    /// Laplace expansion along rows, memoized on the set of used columns.
    ///
    /// Works over any commutative ring; cost is `O(n 2^n)` ring operations.
    pub fn det_by_minors(&self) -> T {
        let n = self.rows;
        assert!(n == self.cols && n < 64, "det_by_minors needs a square matrix with n < 64");
        let mut memo: HashMap<u64, T> = HashMap::new();
        self.minor_rec(0, 0, &mut memo)
    }

    fn minor_rec(&self, row: usize, used: u64, memo: &mut HashMap<u64, T>) -> T {
        let n = self.rows;
        if row == n {
            return T::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = T::zero();
        let mut sign_pos = true;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let a = &self[(row, c)];
            if !a.is_zero() {
                let sub = self.minor_rec(row + 1, used | (1 << c), memo);
                let term = a.clone() * sub;
                acc = if sign_pos { acc + term } else { acc - term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(used, acc.clone());
        acc
    }
}

impl Matrix<Rational> {
    /// Fraction-free (Bareiss) elimination with row pivoting.
    pub fn det_bareiss(&self) -> Rational {
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut a = self.clone();
        let mut prev = Rational::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        negate = !negate;
                    }
                    None => return Rational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix<Rational>> {
        if !self.is_square() {
            return Err(Error::shape(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&r| !a[(r, k)].is_zero())
                .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let piv = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] = a[(k, j)].clone() / piv.clone();
                inv[(k, j)] = inv[(k, j)].clone() / piv.clone();
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let x = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                    a[(i, j)] = x;
                    let y = inv[(i, j)].clone() - f.clone() * inv[(k, j)].clone();
                    inv[(i, j)] = y;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` for a nonsingular square matrix.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::shape("solve needs a square system"));
        }
        let inv = self.inverse()?;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rational::zero(), |acc, k| acc + inv[(i, k)].clone() * b[k].clone())
            })
            .collect())
    }

    /// `m[keep][keep] - m[keep][drop] m[drop][drop]^-1 m[drop][keep]`; `keep` is
    /// returned in the order given.
    pub fn schur_complement(&self, keep: &[usize]) -> Result<Matrix<Rational>> {
        if !self.is_square() {
            return Err(Error::shape("Schur complement of a non-square matrix"));
        }
        let n = self.rows;
        if keep.iter().any(|&k| k >= n) {
            return Err(Error::shape("keep index out of range"));
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let a = self.select(keep, keep);
        if drop.is_empty() {
            return Ok(a);
        }
        let dd = self.select(&drop, &drop).inverse().map_err(|_| {
            Error::Singular("interior block of Schur complement is singular".into())
        })?;
        let b = self.select(keep, &drop);
        let c = self.select(&drop, keep);
        let corr = b.mul(&dd)?.mul(&c)?;
        a.add(&corr.neg())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
