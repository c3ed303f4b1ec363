use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grove::tripartite_prob;
use crate::linalg::Rational;
use crate::network::{cs_graph, laplacian, response_matrix, Network};
use crate::partition::{ColorSpec, Partition};

/// Weighted count of forests in which every tree contains exactly one node:
/// the determinant of the Laplacian restricted to interior vertices.
pub fn forest_count_interior_rooted(net: &Network) -> Result<Rational> {
    let idx: Vec<usize> = net.interior().iter().map(|v| v - 1).collect();
    laplacian(net).select(&idx, &idx).det()
}

/// Connection type of the triangle groves: the three sides are the color
/// classes and the three corners, which lie on two sides, are singletons.
pub fn cs_partition(n: usize) -> Result<Partition> {
    if n < 2 {
        return Err(Error::pre("the triangle needs side at least 2"));
    }
    let total = 3 * n;
    let corners = [n, 2 * n, 3 * n];
    let rest: Vec<usize> = (1..=total).filter(|v| !corners.contains(v)).collect();
    let colors = ColorSpec::from_cuts(rest.len(), [0, n - 1, 2 * (n - 1)])?;
    let reduced = colors.tripartite_partition()?;
    let mut parts: Vec<Vec<usize>> =
        reduced.parts().iter().map(|p| p.iter().map(|&i| rest[i - 1]).collect()).collect();
    parts.extend(corners.iter().map(|&c| vec![c]));
    Partition::new(total, parts)
}

/// Number of triangle groves of type [`cs_partition`], as `pû · Z(1|...|n)`.
/// Returns the count together with the forest count `Z(1|...|n)`.
pub fn cs_count(n: usize) -> Result<(BigInt, BigInt)> {
    let net = cs_graph(n)?;
    let sigma = cs_partition(n)?;
    let l = response_matrix(&net)?;
    let pu = tripartite_prob(&l, &sigma)?.value;
    let forests = forest_count_interior_rooted(&net)?;
    let count = pu * &forests;
    if !count.is_integer() || !forests.is_integer() {
        return Err(Error::Invariant(format!("grove count {count} is not an integer")));
    }
    Ok((count.to_integer(), forests.to_integer()))
}

/// Bits of fixed-point precision for [`forest_count_product_formula`].
const PREC: u32 = 200;
/// Guard bits carried through intermediate steps.
const GUARD: u32 = 56;

/// Evaluates `Π (6 - α - 1/α - β - 1/β - γ - 1/γ)` over sets of distinct
/// `{α, β, γ}` with `α^{3N} = 1`, `(α/β)^N = 1`, `αβγ = 1`, in fixed-point
/// arithmetic, and returns the nearest integer. Fails if the value is not
/// within `2^-64` of an integer.
pub fn forest_count_product_formula(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::pre("the triangle needs side at least 2"));
    }
    let m = 3 * n as i64;
    let mut sets = BTreeSet::new();
    for a in 0..m {
        for k in 0..n as i64 {
            let b = (a + 3 * k).rem_euclid(m);
            let c = (-2 * a - 3 * k).rem_euclid(m);
            if a != b && b != c && a != c {
                let mut t = [a, b, c];
                t.sort_unstable();
                sets.insert(t);
            }
        }
    }
    let bits = PREC + GUARD;
    let one = BigInt::one() << bits;
    let pi = fixed_pi(bits);
    let cos_of = |e: i64| fixed_cos(&((&pi * BigInt::from(2 * e)) / BigInt::from(m)), bits);
    let mut prod = one.clone();
    for t in &sets {
        let mut f = &one * 6;
        for &e in t {
            f -= cos_of(e) * 2;
        }
        prod = (prod * f) >> bits;
    }
    let half = BigInt::one() << (bits - 1);
    let rounded = (&prod + &half) >> bits;
    let err = (&prod - (&rounded << bits)).abs();
    if err > (BigInt::one() << (bits - 64)) {
        return Err(Error::Invariant(format!("product is not close to an integer at {PREC} bits")));
    }
    Ok(rounded)
}

/// `atan(1/x)` scaled by `2^bits`.
fn fixed_atan_inv(x: u32, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << bits) / &x;
    let mut sum = power.clone();
    let mut k = 1u32;
    while !power.is_zero() {
        power /= &x2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// Machin's formula.
fn fixed_pi(bits: u32) -> BigInt {
    fixed_atan_inv(5, bits) * 16 - fixed_atan_inv(239, bits) * 4
}

/// `cos(x)` for fixed-point `x` with `|x| < 8`, by Taylor series.
fn fixed_cos(x: &BigInt, bits: u32) -> BigInt {
    let x2 = (x * x) >> bits;
    let mut term = BigInt::one() << bits;
    let mut sum = term.clone();
    let mut k = 1u32;
    loop {
        term = -((term * &x2) >> bits) / BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_partition() {
        assert_eq!(cs_partition(6).unwrap().to_string(), "1,17|2,16|3,9,15|4,8|5,7|6|10,14|11,13|12|18");
    }

    #[test]
    fn product_formula_matches_determinant() {
        for n in 2..=5 {
            let det = forest_count_interior_rooted(&cs_graph(n).unwrap()).unwrap();
            assert_eq!(Rational::from_integer(forest_count_product_formula(n).unwrap()), det, "N={n}");
        }
    }

    #[test]
    fn fixed_point_constants() {
        let bits = 80;
        let pi = fixed_pi(bits);
        let approx = pi.to_string().parse::<f64>().unwrap() / 2f64.powi(bits as i32);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        let c = fixed_cos(&(&pi / 3), bits);
        let approx = c.to_string().parse::<f64>().unwrap() / 2f64.powi(bits as i32);
        assert!((approx - 0.5).abs() < 1e-15);
    }

    #[test]
    fn small_triangle_counts() {
        for n in 2..=4 {
            let (count, _) = cs_count(n).unwrap();
            assert_eq!(count, BigInt::from(3u32).pow((n * n / 4) as u32), "N={n}");
        }
    }
}
