//! Recovering the conductances of the standard graph from its response
//! matrix through `a_e = Z(π_u) Z(π_v) / (Z(π_f1) Z(π_f2))`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grove::tripartite_prob;
use crate::linalg::{MultiPoly, Rational, Var};
use crate::network::{standard_graph, Point, ResponseMatrix, StandardGraph};
use crate::oracle::enumerate_groves_with;
use crate::partition::Partition;

/// The partitions behind the ratio formula, one per vertex and per face.
#[derive(Debug, Clone)]
pub struct Annotation {
    pub graph: StandardGraph,
    /// `pi_v[v - 1]` for every vertex, nodes included.
    pub pi_v: Vec<Partition>,
    /// `pi_f[k]` for face `graph.faces[k]`.
    pub pi_f: Vec<Partition>,
}

impl Annotation {
    pub fn new(n: usize) -> Result<Self> {
        let graph = standard_graph(n, None)?;
        let pi_v = (1..=graph.network.vertices()).map(|v| pi_v(&graph, v)).collect::<Result<_>>()?;
        let pi_f = (0..graph.faces.len()).map(|f| pi_f(&graph, f)).collect::<Result<_>>()?;
        Ok(Annotation { graph, pi_v, pi_f })
    }
}

/// Farthest point reachable from `p` in steps of `d` through points
/// accepted by `inside`.
fn ray(p: Point, d: Point, inside: impl Fn(Point) -> bool) -> Point {
    let mut last = p;
    loop {
        let q = (last.0 + d.0, last.1 + d.1);
        if !inside(q) {
            return last;
        }
        last = q;
    }
}

/// The partition joining the three nodes reached from vertex `v` going
/// right, up and down. Between consecutive ends the remaining nodes are
/// paired in nested fashion, leaving a middle singleton when their number is
/// odd. At a node the rays may end where they start.
pub fn pi_v(g: &StandardGraph, v: usize) -> Result<Partition> {
    let n = g.n;
    let p = *g.coords.get(v.wrapping_sub(1)).ok_or_else(|| Error::pre(format!("no vertex {v}")))?;
    let mut ends: Vec<usize> = [(2, 0), (0, 2), (0, -2)]
        .iter()
        .map(|&d| g.vertex_at(ray(p, d, |q| g.vertex_at(q).is_some())).expect("ray stays on vertices"))
        .collect();
    if ends.iter().any(|&e| e > n) {
        return Err(Error::Invariant(format!("a ray from vertex {v} ends inside the graph")));
    }
    ends.sort_unstable();
    ends.dedup();
    let mut parts = vec![ends.clone()];
    for k in 0..ends.len() {
        let (x, y) = (ends[k], ends[(k + 1) % ends.len()]);
        let mut gap = Vec::new();
        let mut t = x % n + 1;
        while t != y {
            gap.push(t);
            t = t % n + 1;
        }
        let (mut i, mut j) = (0, gap.len());
        while j >= i + 2 {
            parts.push(vec![gap[i], gap[j - 1]]);
            i += 1;
            j -= 1;
        }
        if j == i + 1 {
            parts.push(vec![gap[i]]);
        }
    }
    Partition::new(n, parts)
}

/// The pairing-with-singletons of face `f` (an index into `g.faces`).
///
/// Positions on the boundary are doubled: node `j` sits at `2j` and the gap
/// after it at `2j + 1`. Three cuts are made: the gap between nodes `n` and
/// `1`, and the ends of the two diagonal rays leaving `f` to the right. A ray
/// ending at a node cuts there and leaves the node single; one ending at an
/// outer face cuts at the gap between that face's two node neighbours. The
/// nodes in each pair of arcs meeting at a cut are then paired across it.
pub fn pi_f(g: &StandardGraph, f: usize) -> Result<Partition> {
    let n = g.n;
    let &p = g.faces.get(f).ok_or_else(|| Error::pre(format!("no face {f}")))?;
    let inside = |q: Point| g.vertex_at(q).is_some() || g.is_face(q);
    let mut cuts = vec![2 * n + 1];
    for d in [(1, 1), (1, -1)] {
        let q = ray(p, d, inside);
        cuts.push(match g.vertex_at(q) {
            Some(v) if v <= n => 2 * v,
            Some(v) => return Err(Error::Invariant(format!("a ray from face {f} ends at interior vertex {v}"))),
            None => face_gap(g, q)?,
        });
    }
    cuts.sort_unstable();
    let arcs: Vec<Vec<usize>> = (0..3)
        .map(|k| {
            let (a, b) = (cuts[k], cuts[(k + 1) % 3]);
            let mut out = Vec::new();
            if a == b {
                return out;
            }
            let mut t = a;
            loop {
                t += 1;
                if t > 2 * n + 1 {
                    t -= 2 * n;
                }
                if t == b {
                    break out;
                }
                if t % 2 == 0 {
                    out.push(t / 2);
                }
            }
        })
        .collect();
    let total: usize = arcs.iter().map(Vec::len).sum();
    if !total.is_multiple_of(2) {
        return Err(Error::Invariant(format!("face {f} leaves an odd number of nodes to pair")));
    }
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &c in &cuts {
        if c % 2 == 0 && !parts.contains(&vec![c / 2]) {
            parts.push(vec![c / 2]);
        }
    }
    for k in 0..3 {
        let (prev, here, next) = (arcs[(k + 2) % 3].len(), arcs[k].len(), arcs[(k + 1) % 3].len());
        if prev + here < next {
            return Err(Error::Invariant(format!("face {f} has unbalanced arcs")));
        }
        let w = (prev + here - next) / 2;
        let left = arcs[(k + 2) % 3].iter().rev().take(w);
        let right = arcs[k].iter().take(w);
        parts.extend(left.zip(right).map(|(&x, &y)| vec![x, y]));
    }
    Partition::new(n, parts)
}

/// Doubled boundary position of the gap at an outer face point.
fn face_gap(g: &StandardGraph, (x, y): Point) -> Result<usize> {
    let n = g.n;
    let mut nb: Vec<usize> = [(x - 1, y - 1), (x + 1, y - 1), (x - 1, y + 1), (x + 1, y + 1)]
        .iter()
        .filter_map(|&q| g.vertex_at(q))
        .filter(|&v| v <= n)
        .collect();
    nb.sort_unstable();
    match nb[..] {
        [1, b] if b == n && n > 2 => Ok(2 * n + 1),
        [a, b] if b == a + 1 => Ok(2 * a + 1),
        _ => Err(Error::Invariant(format!("outer face ({x},{y}) does not sit between two adjacent nodes"))),
    }
}

/// Conductances of the standard graph on `n` nodes, in its edge order, from
/// a response matrix it realizes.
pub fn reconstruct(l: &ResponseMatrix, n: usize) -> Result<Vec<Rational>> {
    if l.n() != n {
        return Err(Error::shape(format!("response matrix has {} nodes, expected {n}", l.n())));
    }
    let ann = Annotation::new(n)?;
    reconstruct_with(l, &ann)
}

pub fn reconstruct_with(l: &ResponseMatrix, ann: &Annotation) -> Result<Vec<Rational>> {
    let pu = |sigma: &Partition| -> Result<Rational> {
        let v = tripartite_prob(l, sigma)?.value;
        if v.is_zero() {
            return Err(Error::pre(format!("pû({sigma}) vanishes; the matrix is not realized by positive conductances")));
        }
        Ok(v)
    };
    let zv = ann.pi_v.iter().map(pu).collect::<Result<Vec<_>>>()?;
    let zf = ann.pi_f.iter().map(pu).collect::<Result<Vec<_>>>()?;
    Ok(ann
        .graph
        .edges
        .iter()
        .map(|e| &zv[e.ends.0 - 1] * &zv[e.ends.1 - 1] / (&zf[e.faces.0] * &zf[e.faces.1]))
        .collect())
}

/// Checks symbolically, with one variable per conductance, that each
/// partition of the annotation is realized by exactly one grove and that
/// `Z(π_u) Z(π_v) = a_e Z(π_f1) Z(π_f2)` for every edge.
pub fn check_monomial_identity(n: usize) -> Result<()> {
    let ann = Annotation::new(n)?;
    let table = enumerate_groves_with(&ann.graph.network, |k, _| MultiPoly::var(Var::A(k as u32)));
    let z = |sigma: &Partition| -> Result<MultiPoly> {
        let p = table.get(sigma);
        match p.as_monomial() {
            Some((_, c)) if c == &1.into() => Ok(p),
            _ => Err(Error::Invariant(format!("Z({sigma}) = {p} is not a single grove"))),
        }
    };
    for (k, e) in ann.graph.edges.iter().enumerate() {
        let lhs = z(&ann.pi_v[e.ends.0 - 1])? * z(&ann.pi_v[e.ends.1 - 1])?;
        let rhs = MultiPoly::var(Var::A(k as u32)) * z(&ann.pi_f[e.faces.0])? * z(&ann.pi_f[e.faces.1])?;
        if lhs != rhs {
            return Err(Error::Invariant(format!("edge {k}: {lhs} differs from {rhs}")));
        }
    }
    Ok(())
}
