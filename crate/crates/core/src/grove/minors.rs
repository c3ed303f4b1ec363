use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::network::ResponseMatrix;
use crate::partition::Partition;

/// Disjoint node sets covering `1..=n` with `|a| = |b|`. Each set is used in
/// increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSets {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

impl MinorSets {
    fn validate(&self, n: usize) -> Result<()> {
        if self.a.len() != self.b.len() {
            return Err(Error::pre("A and B must have the same size"));
        }
        let mut all: Vec<usize> = [&self.a, &self.b, &self.c, &self.d].iter().flat_map(|s| s.iter().copied()).collect();
        all.sort_unstable();
        if all != (1..=n).collect::<Vec<_>>() {
            return Err(Error::pre("A, B, C, D must be disjoint and cover every node"));
        }
        Ok(())
    }

    fn sorted(&self) -> MinorSets {
        let s = |v: &Vec<usize>| {
            let mut v = v.clone();
            v.sort_unstable();
            v
        };
        MinorSets { a: s(&self.a), b: s(&self.b), c: s(&self.c), d: s(&self.d) }
    }
}

/// Both sides of the minor identity: `det L_{A∪C, B∪C}` (rows `a..., c...`,
/// columns `b..., c...`) and the signed grove sum
/// `(-1)^{|C|} Σ_π sgn(π) pû(a_1 b_π(1) | ... | d_1 | ...)`, where each node of
/// `C` may join any part. `pu` supplies `pû` of a partition; pass an
/// enumeration-based one for non-planar networks.
pub fn minor_grove_identity(
    l: &ResponseMatrix,
    sets: &MinorSets,
    mut pu: impl FnMut(&Partition) -> Result<Rational>,
) -> Result<(Rational, Rational)> {
    let n = l.n();
    sets.validate(n)?;
    let s = sets.sorted();
    let rows: Vec<usize> = s.a.iter().chain(&s.c).map(|x| x - 1).collect();
    let cols: Vec<usize> = s.b.iter().chain(&s.c).map(|x| x - 1).collect();
    let det = l.matrix().select(&rows, &cols).det()?;

    let k = s.a.len();
    let parts_count = k + s.d.len();
    let mut sum = Rational::from_integer(0.into());
    for perm in permutations(k) {
        let sign_even = crate::linalg::pfaffian::permutation_is_even(&perm);
        if parts_count == 0 {
            // Only possible when C is empty too, since C nodes need a part.
            if s.c.is_empty() {
                sum += Rational::from_integer(1.into());
            }
            continue;
        }
        // Distribute the nodes of C over the parts in every way.
        let mut choice = vec![0usize; s.c.len()];
        loop {
            let mut parts: Vec<Vec<usize>> =
                (0..k).map(|i| vec![s.a[i], s.b[perm[i]]]).chain(s.d.iter().map(|&x| vec![x])).collect();
            for (ci, &p) in choice.iter().enumerate() {
                parts[p].push(s.c[ci]);
            }
            let v = pu(&Partition::new(n, parts)?)?;
            if sign_even {
                sum += v;
            } else {
                sum -= v;
            }
            // Next assignment in base `parts_count`.
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < parts_count {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    if s.c.len() % 2 == 1 {
        sum = -sum;
    }
    Ok((det, sum))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}
