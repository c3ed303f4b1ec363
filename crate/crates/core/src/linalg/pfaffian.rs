use std::collections::HashMap;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Square matrix with zero diagonal and `m[j][i] = -m[i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetricMatrix<T> {
    m: Matrix<T>,
}

impl<T: Scalar> AntisymmetricMatrix<T> {
    /// Builds the matrix from its strict upper triangle `f(i, j)`, `i < j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                m[(j, i)] = -v.clone();
                m[(i, j)] = v;
            }
        }
        AntisymmetricMatrix { m }
    }

    pub fn try_from_matrix(m: Matrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::shape("antisymmetric matrix must be square"));
        }
        let n = m.rows();
        for i in 0..n {
            if !m[(i, i)].is_zero() {
                return Err(Error::shape(format!("nonzero diagonal entry at {i}")));
            }
            for j in 0..i {
                if m[(i, j)] != -m[(j, i)].clone() {
                    return Err(Error::shape(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
            }
        }
        Ok(AntisymmetricMatrix { m })
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[(i, j)]
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.m
    }

    /// Principal submatrix on `idx`, in the given order.
    pub fn select(&self, idx: &[usize]) -> Self {
        AntisymmetricMatrix { m: self.m.select(idx, idx) }
    }

    /// Deletes the listed rows and columns.
    pub fn without(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.size()).filter(|i| !drop.contains(i)).collect();
        self.select(&keep)
    }
}

/// Pfaffian; the empty matrix has Pfaffian one.
pub fn pfaffian<T: Scalar>(m: &AntisymmetricMatrix<T>) -> Result<T> {
    if m.size() % 2 == 1 {
        return Err(Error::shape(format!("Pfaffian of odd size {}", m.size())));
    }
    Ok(T::pfaffian_kernel(m))
}

/// Expansion along the first remaining row, memoized on the removed set.
pub fn pfaffian_by_expansion<T: Scalar>(m: &AntisymmetricMatrix<T>) -> T {
    let n = m.size();
    assert!(n.is_multiple_of(2) && n < 64);
    let mut memo = HashMap::new();
    pf_rec(m, 0, &mut memo)
}

fn pf_rec<T: Scalar>(m: &AntisymmetricMatrix<T>, removed: u64, memo: &mut HashMap<u64, T>) -> T {
    let n = m.size();
    let Some(i) = (0..n).find(|&i| removed & (1 << i) == 0) else {
        return T::one();
    };
    if let Some(v) = memo.get(&removed) {
        return v.clone();
    }
    let mut acc = T::zero();
    let mut positive = true;
    for j in i + 1..n {
        if removed & (1 << j) != 0 {
            continue;
        }
        let a = m.get(i, j);
        if !a.is_zero() {
            let term = a.clone() * pf_rec(m, removed | (1 << i) | (1 << j), memo);
            acc = if positive { acc + term } else { acc - term };
        }
        positive = !positive;
    }
    memo.insert(removed, acc.clone());
    acc
}

/// Skew Gaussian elimination: `Pf(A) = a01 Pf(A')` with
/// `A'_ij = a_ij + (a_1i a_0j - a_0i a_1j) / a01` on the remaining indices.
pub fn pfaffian_by_elimination(m: &AntisymmetricMatrix<Rational>) -> Rational {
    let n = m.size();
    assert!(n.is_multiple_of(2));
    let mut a = m.as_matrix().clone();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut result = Rational::one();
    while !idx.is_empty() {
        let p = idx[0];
        let Some(k) = (1..idx.len()).find(|&k| !a[(p, idx[k])].is_zero()) else {
            return Rational::zero();
        };
        if k != 1 {
            // Swapping two indices negates the Pfaffian.
            idx.swap(1, k);
            result = -result;
        }
        let q = idx[1];
        let piv = a[(p, q)].clone();
        let rest: Vec<usize> = idx[2..].to_vec();
        for (s, &i) in rest.iter().enumerate() {
            for &j in &rest[s + 1..] {
                let v = a[(i, j)].clone()
                    + (a[(q, i)].clone() * a[(p, j)].clone() - a[(p, i)].clone() * a[(q, j)].clone())
                        / piv.clone();
                a[(j, i)] = -v.clone();
                a[(i, j)] = v;
            }
        }
        result *= piv;
        idx = rest;
    }
    result
}

/// Pfaffianoid of an odd antisymmetric matrix, by expansion over the tripleton.
pub fn pfaffianoid<T: Scalar>(m: &AntisymmetricMatrix<T>) -> Result<T> {
    let n = m.size();
    if n.is_multiple_of(2) {
        return Err(Error::shape(format!("Pfaffianoid of even size {n}")));
    }
    let mut acc = T::zero();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ab, bc, ac) = (m.get(a, b), m.get(b, c), m.get(a, c));
                let e2 = ab.clone() * bc.clone() + bc.clone() * ac.clone() + ac.clone() * ab.clone();
                if e2.is_zero() {
                    continue;
                }
                let term = e2 * T::pfaffian_kernel(&m.without(&[a, b, c]));
                // Zero-based indices shift the parity by 3.
                acc = if (a + b + c) % 2 == 1 { acc + term } else { acc - term };
            }
        }
    }
    Ok(acc)
}

/// The defining sum over near-pairings. Exponential; used as a test oracle.
pub fn pfaffianoid_direct<T: Scalar>(m: &AntisymmetricMatrix<T>) -> Result<T> {
    let n = m.size();
    if n.is_multiple_of(2) {
        return Err(Error::shape(format!("Pfaffianoid of even size {n}")));
    }
    let mut acc = T::zero();
    for p in 0..n {
        for r in p + 1..n {
            for q in 0..n {
                if q == p || q == r {
                    continue;
                }
                let w = m.get(p, q).clone() * m.get(q, r).clone();
                if w.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|&x| x != p && x != q && x != r).collect();
                let mut perm = Vec::with_capacity(n);
                for_each_pairing(&rest, &mut perm, &mut |pairs| {
                    let mut full = pairs.to_vec();
                    full.extend([p, q, r]);
                    let mut term = w.clone();
                    for c in pairs.chunks(2) {
                        term = term * m.get(c[0], c[1]).clone();
                    }
                    acc = if permutation_is_even(&full) { acc.clone() + term } else { acc.clone() - term };
                });
            }
        }
    }
    Ok(acc)
}

fn for_each_pairing(rest: &[usize], perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if rest.is_empty() {
        f(perm);
        return;
    }
    let first = rest[0];
    for k in 1..rest.len() {
        let partner = rest[k];
        let remaining: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != partner).collect();
        perm.push(first);
        perm.push(partner);
        for_each_pairing(&remaining, perm, f);
        perm.truncate(perm.len() - 2);
    }
}

pub(crate) fn permutation_is_even(p: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}
