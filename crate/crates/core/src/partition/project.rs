use std::collections::HashMap;

use num_bigint::BigInt;

use super::{Partition, PartitionSum};
use crate::error::{Error, Result};

/// A crossing between two parts: `a, c` are cyclically consecutive in part
/// `p`, `b, d` cyclically consecutive in part `q`, with `b` strictly inside
/// the arc from `a` to `c` and `d` strictly outside it.
#[derive(Debug, Clone, Copy)]
struct Witness {
    p: usize,
    q: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
}

fn in_arc(x: usize, lo: usize, hi: usize, n: usize) -> bool {
    let off = |y: usize| (y + n - lo) % n;
    0 < off(x) && off(x) < off(hi)
}

fn witnesses(t: &Partition) -> Vec<Witness> {
    let n = t.n();
    let parts = t.parts();
    let mut out = Vec::new();
    for (pi, pp) in parts.iter().enumerate() {
        if pp.len() < 2 {
            continue;
        }
        for k in 0..pp.len() {
            let (a, c) = (pp[k], pp[(k + 1) % pp.len()]);
            for (qi, qq) in parts.iter().enumerate() {
                if qi == pi || qq.len() < 2 {
                    continue;
                }
                for m in 0..qq.len() {
                    let (b, d) = (qq[m], qq[(m + 1) % qq.len()]);
                    match (in_arc(b, a, c, n), in_arc(d, a, c, n)) {
                        (true, false) => out.push(Witness { p: pi, q: qi, a, b, c, d }),
                        (false, true) => out.push(Witness { p: pi, q: qi, a, b: d, c, d: b }),
                        _ => {}
                    }
                }
            }
        }
    }
    out
}

/// The six partitions produced by uncrossing `t` at `w`, with their signs:
/// `a|bcd + b|acd + c|abd + d|abc - ab|cd - ad|bc`, where the other elements
/// of the two crossing parts ride along with the nearest of `a, b, c, d`.
fn uncross(t: &Partition, w: Witness) -> Vec<(Partition, i32)> {
    let n = t.n();
    let Witness { p, q, a, b, c, d } = w;
    // Followers of each of a, b, c, d.
    let mut with: HashMap<usize, Vec<usize>> = [a, b, c, d].iter().map(|&x| (x, vec![x])).collect();
    for &x in &t.parts()[p] {
        if x != a && x != c {
            let lead = if in_arc(x, c, d, n) { c } else { a };
            with.get_mut(&lead).unwrap().push(x);
        }
    }
    for &x in &t.parts()[q] {
        if x != b && x != d {
            let lead = if in_arc(x, d, a, n) { d } else { b };
            with.get_mut(&lead).unwrap().push(x);
        }
    }
    let rest: Vec<Vec<usize>> =
        t.parts().iter().enumerate().filter(|&(k, _)| k != p && k != q).map(|(_, v)| v.clone()).collect();
    let shapes: [(&[&[usize]], i32); 6] = [
        (&[&[a], &[b, c, d]], 1),
        (&[&[b], &[a, c, d]], 1),
        (&[&[c], &[a, b, d]], 1),
        (&[&[d], &[a, b, c]], 1),
        (&[&[a, b], &[c, d]], -1),
        (&[&[a, d], &[b, c]], -1),
    ];
    shapes
        .iter()
        .map(|(blocks, sign)| {
            let mut parts = rest.clone();
            for block in blocks.iter() {
                parts.push(block.iter().flat_map(|x| with[x].iter().copied()).collect());
            }
            (Partition::canonical(n, parts), *sign)
        })
        .collect()
}

/// Memoizing projection onto planar partitions.
#[derive(Debug, Default)]
pub struct Projector {
    memo: HashMap<Partition, PartitionSum>,
}

impl Projector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn project(&mut self, t: &Partition) -> PartitionSum {
        if let Some(r) = self.memo.get(t) {
            return r.clone();
        }
        let res = match witnesses(t).first() {
            None => PartitionSum::single(t.clone()),
            Some(&w) => {
                let mut acc = PartitionSum::default();
                for (s, sign) in uncross(t, w) {
                    let sub = self.project(&s);
                    acc.add_scaled(&sub, &BigInt::from(sign));
                }
                acc
            }
        };
        self.memo.insert(t.clone(), res.clone());
        res
    }
}

/// Image of `t` under the projection onto planar partitions.
pub fn project(t: &Partition) -> PartitionSum {
    Projector::new().project(t)
}

/// Projection with the crossing to resolve chosen by `choose(count)` at each
/// step. Not memoized; the result does not depend on the choices.
pub fn project_by(t: &Partition, choose: &mut dyn FnMut(usize) -> usize) -> PartitionSum {
    let ws = witnesses(t);
    if ws.is_empty() {
        return PartitionSum::single(t.clone());
    }
    let w = ws[choose(ws.len()) % ws.len()];
    let mut acc = PartitionSum::default();
    for (s, sign) in uncross(t, w) {
        acc.add_scaled(&project_by(&s, choose), &BigInt::from(sign));
    }
    acc
}

/// Coefficient of the planar partition `s` in `project(t)`.
pub fn projection_coefficient(s: &Partition, t: &Partition) -> Result<BigInt> {
    if !s.is_planar() {
        return Err(Error::pre(format!("{s} is not planar")));
    }
    if s.n() != t.n() {
        return Err(Error::pre(format!("node counts differ: {} vs {}", s.n(), t.n())));
    }
    Ok(project(t).coefficient(s))
}
