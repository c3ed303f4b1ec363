use num_traits::Zero;

use super::{Partition, Projector};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Largest node count accepted by [`grove_prob_generic`].
pub const GENERIC_NODE_BOUND: usize = 8;

/// Sum over forests of the complete graph on the nodes whose trees span the
/// parts of `t`, each weighted by the product of `l[i][j]` over its edges.
/// `l` is indexed from zero; only off-diagonal entries are read.
pub fn l_tau_polynomial<T: Scalar>(t: &Partition, l: &Matrix<T>) -> Result<T> {
    if l.rows() != t.n() || l.cols() != t.n() {
        return Err(Error::shape(format!("{}-node partition against {}x{} matrix", t.n(), l.rows(), l.cols())));
    }
    let mut acc = T::one();
    for part in t.parts() {
        let k = part.len();
        if k < 2 {
            continue;
        }
        // Matrix-tree theorem on the part, with the last vertex grounded.
        let lap = Matrix::from_fn(k - 1, k - 1, |i, j| {
            if i == j {
                (0..k).filter(|&m| m != i).fold(T::zero(), |s, m| s + l[(part[i] - 1, part[m] - 1)].clone())
            } else {
                -l[(part[i] - 1, part[j] - 1)].clone()
            }
        });
        acc = acc * lap.det()?;
    }
    Ok(acc)
}

/// `Pr(s) / Pr(1|2|...|n)` as `Σ_τ P_{s,τ} L_τ`, summing over every partition
/// `τ`. Exponential in `n`; intended as a cross-check.
pub fn grove_prob_generic<T: Scalar>(s: &Partition, l: &Matrix<T>) -> Result<T> {
    if !s.is_planar() {
        return Err(Error::pre(format!("{s} is not planar")));
    }
    if s.n() > GENERIC_NODE_BOUND {
        return Err(Error::TooLarge(format!("{} nodes exceeds the bound {GENERIC_NODE_BOUND}", s.n())));
    }
    let mut proj = Projector::new();
    let mut acc = T::zero();
    for t in Partition::all(s.n()) {
        if t.num_parts() != s.num_parts() {
            continue;
        }
        let c = proj.project(&t).coefficient(s);
        if c.is_zero() {
            continue;
        }
        acc = acc + T::from_bigint(&c) * l_tau_polynomial(&t, l)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{MultiPoly, Var};
    use num_traits::One;

    fn sym(n: usize) -> Matrix<MultiPoly> {
        Matrix::from_fn(n, n, |i, j| if i == j { MultiPoly::zero() } else { MultiPoly::var(Var::l(i + 1, j + 1)) })
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn l_tau_examples() {
        assert_eq!(
            l_tau_polynomial(&p("1|234"), &sym(4)).unwrap().to_string(),
            "L[2,3]*L[2,4] + L[2,3]*L[3,4] + L[2,4]*L[3,4]"
        );
        assert_eq!(l_tau_polynomial(&p("13|24"), &sym(4)).unwrap().to_string(), "L[1,3]*L[2,4]");
        assert_eq!(l_tau_polynomial(&Partition::singletons(5), &sym(5)).unwrap(), MultiPoly::one());
    }

    #[test]
    fn single_pair_is_the_entry() {
        let s = p("14|2|3|5");
        assert_eq!(grove_prob_generic(&s, &sym(5)).unwrap(), MultiPoly::var(Var::l(1, 4)));
        assert_eq!(grove_prob_generic(&Partition::singletons(4), &sym(4)).unwrap(), MultiPoly::one());
    }

    #[test]
    fn bounds_and_planarity() {
        assert!(grove_prob_generic(&p("13|24"), &sym(4)).is_err());
        assert!(matches!(grove_prob_generic(&Partition::singletons(9), &sym(9)), Err(Error::TooLarge(_))));
    }
}
