//! Closed-form grove connection probabilities from the response matrix.

mod minors;
mod resistance;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pfaffian, pfaffianoid, AntisymmetricMatrix, Matrix, MultiPoly, Rational, Scalar, Var};
use crate::network::{dual_response, ResponseMatrix};
use crate::partition::{ColorSpec, Partition};
use num_traits::Zero;

pub use minors::{minor_grove_identity, MinorSets};
pub use resistance::{pairing_prob_from_resistances, resistance_pfaffian, tripartite_prob_from_resistances};

/// What a grove probability is divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `Pr(σ) / Pr(1|2|...|n)`.
    PerUncrossing,
    /// `Pr(σ) / Pr(12...n)`.
    PerTree,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroveProbability {
    pub value: Rational,
    pub normalization: Normalization,
}

impl GroveProbability {
    fn per_uncrossing(value: Rational) -> Self {
        GroveProbability { value, normalization: Normalization::PerUncrossing }
    }

    fn per_tree(value: Rational) -> Self {
        GroveProbability { value, normalization: Normalization::PerTree }
    }

    /// Converts to per-uncrossing normalization given `det(-L̃)`.
    pub fn to_per_uncrossing(&self, tree_ratio: &Rational) -> Rational {
        match self.normalization {
            Normalization::PerUncrossing => self.value.clone(),
            Normalization::PerTree => &self.value * tree_ratio,
        }
    }
}

/// `Z(12...n) / Z(1|2|...|n) = det(-L̃)`.
pub fn uncrossing_tree_ratio(l: &ResponseMatrix) -> Result<Rational> {
    l.uncrossing_tree_ratio()
}

/// The antisymmetric matrix with `L_ij` above the diagonal for nodes of
/// different colors and zero for equal colors, nodes in order `1..n`.
pub fn tripartite_matrix<T: Scalar>(l: &Matrix<T>, c: &ColorSpec) -> Result<AntisymmetricMatrix<T>> {
    if l.rows() != c.n() || l.cols() != c.n() {
        return Err(Error::shape(format!("{} colors for a {}x{} matrix", c.n(), l.rows(), l.cols())));
    }
    Ok(AntisymmetricMatrix::from_upper(c.n(), |i, j| {
        if c.color(i + 1) == c.color(j + 1) {
            T::zero()
        } else {
            l[(i, j)].clone()
        }
    }))
}

fn tripleton(p: &Partition) -> Option<&[usize]> {
    p.parts().iter().find(|q| q.len() == 3).map(Vec::as_slice)
}

/// `pû(σ)` for the tripartite pairing of `c` as a Pfaffian.
pub fn pairing_pfaffian<T: Scalar>(l: &Matrix<T>, c: &ColorSpec) -> Result<T> {
    let sigma = c.tripartite_partition()?;
    if tripleton(&sigma).is_some() {
        return Err(Error::pre(format!("{sigma} is a tripod")));
    }
    pfaffian(&tripartite_matrix(l, c)?)
}

/// `pû(σ)` for the tripod of `c` as a signed Pfaffianoid-type expansion.
///
/// The tripleton of each near-pairing is restricted to one node of each
/// color; triples with a repeated color would add spurious terms.
///
/// The expansion assumes no color arc wraps past node `n`, so nodes are first
/// renumbered cyclically to start at the beginning of an arc; the tripleton
/// sign is taken in the new numbering.
pub fn tripod_pfaffianoid<T: Scalar>(l: &Matrix<T>, c: &ColorSpec) -> Result<T> {
    let n = c.n();
    if l.rows() != n || l.cols() != n {
        return Err(Error::shape(format!("{n} colors for a {}x{} matrix", l.rows(), l.cols())));
    }
    let start = (0..n).find(|&i| c.colors()[i] != c.colors()[(i + n - 1) % n]).unwrap_or(0);
    let order: Vec<usize> = (0..n).map(|k| (start + k) % n).collect();
    let c = &ColorSpec::new(order.iter().map(|&i| c.colors()[i]).collect())?;
    let l = &l.select(&order, &order);
    let sigma = c.tripartite_partition()?;
    let tri = tripleton(&sigma).ok_or_else(|| Error::pre(format!("{sigma} has no tripleton")))?;
    let m = tripartite_matrix(l, c)?;
    let mut acc = T::zero();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let (ca, cb, cd) = (c.color(a + 1), c.color(b + 1), c.color(d + 1));
                if ca == cb || cb == cd || ca == cd {
                    continue;
                }
                let (ab, bd, ad) = (m.get(a, b), m.get(b, d), m.get(a, d));
                let e2 = ab.clone() * bd.clone() + bd.clone() * ad.clone() + ad.clone() * ab.clone();
                if e2.is_zero() {
                    continue;
                }
                let term = e2 * pfaffian(&m.without(&[a, b, d]))?;
                // Zero-based indices shift the parity by 3.
                acc = if (a + b + d) % 2 == 1 { acc + term } else { acc - term };
            }
        }
    }
    Ok(if tri.iter().sum::<usize>() % 2 == 1 { -acc } else { acc })
}

/// The unrestricted form: the signed Pfaffianoid of the whole block
/// matrix, including tripletons with a repeated color. Kept to document
/// that it differs from `pû` in general.
pub fn tripod_pfaffianoid_literal<T: Scalar>(l: &Matrix<T>, c: &ColorSpec) -> Result<T> {
    let sigma = c.tripartite_partition()?;
    let tri = tripleton(&sigma).ok_or_else(|| Error::pre(format!("{sigma} has no tripleton")))?;
    let pfd = pfaffianoid(&tripartite_matrix(l, c)?)?;
    Ok(if tri.iter().sum::<usize>() % 2 == 1 { -pfd } else { pfd })
}

/// Checks that `p` has only parts of size at most three and at most one of
/// size three.
fn check_tripartite_shape(p: &Partition) -> Result<()> {
    if !p.is_planar() {
        return Err(Error::pre(format!("{p} is not planar")));
    }
    let triples = p.parts().iter().filter(|q| q.len() == 3).count();
    if triples > 1 || p.parts().iter().any(|q| q.len() > 3) {
        return Err(Error::pre(format!("{p} is not a tripartite partition")));
    }
    Ok(())
}

fn some_coloring(p: &Partition) -> Result<ColorSpec> {
    ColorSpec::colorings_for(p)
        .into_iter()
        .next()
        .ok_or_else(|| Error::pre(format!("{p} is not the tripartite partition of any coloring")))
}

/// `pû(σ)` for a tripartite partition `σ` that may have singleton parts.
///
/// Singletons of a pairing are deleted along with their rows and columns.
/// For a tripod, each singleton `s` is split: a new node `s'` is inserted
/// right after `s` and joined to it by a unit edge, and the pair `{s, s'}`
/// replaces the singleton. The groves of the two networks then correspond
/// one to one.
pub fn tripartite_prob_symbolic<T: Scalar>(l: &Matrix<T>, sigma: &Partition) -> Result<T> {
    check_tripartite_shape(sigma)?;
    if l.rows() != sigma.n() {
        return Err(Error::shape("partition and matrix sizes differ"));
    }
    let singles: Vec<usize> = sigma.parts().iter().filter(|q| q.len() == 1).map(|q| q[0]).collect();
    if tripleton(sigma).is_none() {
        let reduced = sigma.drop_singletons(&singles)?;
        if reduced.n() == 0 {
            return Ok(T::one());
        }
        let keep: Vec<usize> = (0..sigma.n()).filter(|&i| !singles.contains(&(i + 1))).collect();
        let c = some_coloring(&reduced)?;
        return pairing_pfaffian(&l.select(&keep, &keep), &c);
    }
    if singles.is_empty() {
        return tripod_pfaffianoid(l, &some_coloring(sigma)?);
    }
    let (aug, sigma_aug) = split_singletons(l, sigma, &singles)?;
    tripod_pfaffianoid(&aug, &some_coloring(&sigma_aug)?)
}

fn split_singletons<T: Scalar>(l: &Matrix<T>, sigma: &Partition, singles: &[usize]) -> Result<(Matrix<T>, Partition)> {
    let n = sigma.n();
    // position[v] is the new index (1-based) of old node v; leaves follow.
    let mut position = vec![0; n + 1];
    let mut leaf_of = vec![0; n + 1];
    let mut next = 0;
    for v in 1..=n {
        next += 1;
        position[v] = next;
        if singles.contains(&v) {
            next += 1;
            leaf_of[v] = next;
        }
    }
    let m = next;
    let mut old_of = vec![0; m + 1];
    for v in 1..=n {
        old_of[position[v]] = v;
    }
    let aug = Matrix::from_fn(m, m, |i, j| {
        let (a, b) = (old_of[i + 1], old_of[j + 1]);
        match (a, b) {
            (0, 0) => {
                if i == j {
                    -T::one()
                } else {
                    T::zero()
                }
            }
            (0, s) | (s, 0) => {
                let leaf = if a == 0 { i + 1 } else { j + 1 };
                if leaf_of[s] == leaf {
                    T::one()
                } else {
                    T::zero()
                }
            }
            (a, b) if a == b && leaf_of[a] != 0 => l[(a - 1, b - 1)].clone() - T::one(),
            (a, b) => l[(a - 1, b - 1)].clone(),
        }
    });
    let parts = sigma
        .parts()
        .iter()
        .map(|q| {
            let mut part: Vec<usize> = q.iter().map(|&v| position[v]).collect();
            if q.len() == 1 {
                part.push(leaf_of[q[0]]);
            }
            part
        })
        .collect();
    Ok((aug, Partition::new(m, parts)?))
}

/// `pû(σ)` for the tripartite pairing of `c`.
pub fn tripartite_pairing_prob(l: &ResponseMatrix, c: &ColorSpec) -> Result<GroveProbability> {
    Ok(GroveProbability::per_uncrossing(pairing_pfaffian(l.matrix(), c)?))
}

/// `pû(σ)` for the tripod of `c`.
pub fn tripod_prob(l: &ResponseMatrix, c: &ColorSpec) -> Result<GroveProbability> {
    Ok(GroveProbability::per_uncrossing(tripod_pfaffianoid(l.matrix(), c)?))
}

/// `pû(σ)` for any tripartite partition, singletons allowed.
pub fn tripartite_prob(l: &ResponseMatrix, sigma: &Partition) -> Result<GroveProbability> {
    Ok(GroveProbability::per_uncrossing(tripartite_prob_symbolic(l.matrix(), sigma)?))
}

/// `pû(σ)` for a tripod through the dual network: the dual partition is a
/// pairing with singletons, evaluated on the dual response matrix, and the
/// result is rescaled by `Z(12...n) / Z(1|2|...|n)`.
pub fn tripod_prob_via_dual(l: &ResponseMatrix, c: &ColorSpec) -> Result<GroveProbability> {
    let sigma = c.tripartite_partition()?;
    if tripleton(&sigma).is_none() {
        return Err(Error::pre(format!("{sigma} has no tripleton")));
    }
    tripartite_prob_via_dual(l, &sigma)
}

/// As [`tripod_prob_via_dual`] for any tripartite partition, singletons
/// allowed.
pub fn tripartite_prob_via_dual(l: &ResponseMatrix, sigma: &Partition) -> Result<GroveProbability> {
    check_tripartite_shape(sigma)?;
    let dual = sigma.kreweras_dual()?;
    let ldual = dual_response(l)?;
    let pu_dual = tripartite_prob_symbolic(ldual.matrix(), &dual)?;
    Ok(GroveProbability::per_uncrossing(pu_dual * l.uncrossing_tree_ratio()?))
}

/// `n x n` matrix of the variables `L[i,j]` with a zero diagonal, for the
/// formulas that never read diagonal entries.
pub fn symbolic_response(n: usize) -> Matrix<MultiPoly> {
    Matrix::from_fn(n, n, |i, j| if i == j { MultiPoly::zero() } else { MultiPoly::var(Var::l(i + 1, j + 1)) })
}
