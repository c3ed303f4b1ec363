use super::{tripartite_matrix, GroveProbability};
use crate::error::{Error, Result};
use crate::linalg::{pfaffian, Matrix, Rational, UniPoly};
use crate::network::ResistanceMatrix;
use crate::partition::ColorSpec;

fn half_resistance_entry(r: &ResistanceMatrix, i: usize, j: usize) -> UniPoly {
    UniPoly::t_plus(-(r.get(i, j) / Rational::from_integer(2.into())))
}

/// `Pr(σ) / Pr(12...n)` for the parallel pairing between `A` and `B`: the
/// coefficient of `t` in `det[t - R_ij / 2]` over `i ∈ A`, `j ∈ B`.
pub fn pairing_prob_from_resistances(r: &ResistanceMatrix, a: &[usize], b: &[usize]) -> Result<GroveProbability> {
    let n = r.n();
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    if a.len() != b.len() || all != (1..=n).collect::<Vec<_>>() {
        return Err(Error::pre("A and B must be equinumerous, disjoint and cover every node"));
    }
    let m = Matrix::from_fn(a.len(), b.len(), |i, j| half_resistance_entry(r, a[i], b[j]));
    let det = m.det()?;
    Ok(GroveProbability::per_tree(det.coeff(1)))
}

/// The Pfaffian of `t - R_ij / 2` over differently colored `i < j`, as a
/// polynomial in `t`.
pub fn resistance_pfaffian(r: &ResistanceMatrix, c: &ColorSpec) -> Result<UniPoly> {
    let full = Matrix::from_fn(r.n(), r.n(), |i, j| {
        if i == j {
            UniPoly::default()
        } else {
            half_resistance_entry(r, i + 1, j + 1)
        }
    });
    pfaffian(&tripartite_matrix(&full, c)?)
}

/// `Pr(σ) / Pr(12...n)` for the tripartite pairing of `c`: the coefficient of
/// `t` in [`resistance_pfaffian`].
pub fn tripartite_prob_from_resistances(r: &ResistanceMatrix, c: &ColorSpec) -> Result<GroveProbability> {
    let sigma = c.tripartite_partition()?;
    if sigma.parts().iter().any(|p| p.len() != 2) {
        return Err(Error::pre(format!("{sigma} is not a pairing")));
    }
    Ok(GroveProbability::per_tree(resistance_pfaffian(r, c)?.coeff(1)))
}
