use super::{Edge, Network};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A local rewrite that leaves the response matrix unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// Merge the two edges at an interior vertex of degree two.
    Series { vertex: usize },
    /// Merge two edges with the same endpoints.
    Parallel { first: usize, second: usize },
    /// Delete an interior vertex of degree one with its edge.
    Pendant { vertex: usize },
    /// Replace an interior vertex of degree three by a triangle.
    WyeDelta { vertex: usize },
    /// Replace a triangle, given by its three edge indices, by a new interior
    /// vertex joined to its corners.
    DeltaWye { edges: [usize; 3] },
}

/// Applies `mv`. Vertex ids above a deleted vertex shift down by one; edges
/// created by the move are appended after the surviving edges.
pub fn apply_transform(net: &Network, mv: Move) -> Result<Network> {
    match mv {
        Move::Series { vertex } => series(net, vertex),
        Move::Parallel { first, second } => parallel(net, first, second),
        Move::Pendant { vertex } => pendant(net, vertex),
        Move::WyeDelta { vertex } => wye_delta(net, vertex),
        Move::DeltaWye { edges } => delta_wye(net, edges),
    }
}

fn interior_with_degree(net: &Network, v: usize, deg: usize) -> Result<Vec<usize>> {
    if v == 0 || v > net.vertices() {
        return Err(Error::pre(format!("vertex {v} out of range")));
    }
    if net.is_node(v) {
        return Err(Error::pre(format!("vertex {v} is a node")));
    }
    let inc = net.incident(v);
    if inc.len() != deg {
        return Err(Error::pre(format!("vertex {v} has degree {}, expected {deg}", inc.len())));
    }
    Ok(inc)
}

fn other(e: &Edge, v: usize) -> usize {
    if e.u == v {
        e.v
    } else {
        e.u
    }
}

/// Drops the listed edges and vertex `v` (if any), renumbers, and appends `add`.
fn rebuild(net: &Network, drop_edges: &[usize], drop_vertex: Option<usize>, add: Vec<Edge>, extra_vertex: bool) -> Result<Network> {
    let renum = |x: usize| match drop_vertex {
        Some(v) if x > v => x - 1,
        _ => x,
    };
    let mut edges: Vec<Edge> = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(k, _)| !drop_edges.contains(k))
        .map(|(_, e)| Edge { u: renum(e.u), v: renum(e.v), conductance: e.conductance.clone() })
        .collect();
    edges.extend(add.into_iter().map(|e| Edge { u: renum(e.u), v: renum(e.v), conductance: e.conductance }));
    let vertices = net.vertices() - usize::from(drop_vertex.is_some()) + usize::from(extra_vertex);
    let nodes = net.nodes().iter().map(|&x| renum(x)).collect();
    Network::new(vertices, edges, nodes)
}

fn series(net: &Network, v: usize) -> Result<Network> {
    let inc = interior_with_degree(net, v, 2)?;
    let (e, f) = (&net.edges()[inc[0]], &net.edges()[inc[1]]);
    let (a, b) = (other(e, v), other(f, v));
    if a == b {
        return Err(Error::pre(format!("both edges at {v} lead to {a}")));
    }
    let (x, y) = (&e.conductance, &f.conductance);
    let c = x * y / (x + y);
    rebuild(net, &inc, Some(v), vec![Edge { u: a, v: b, conductance: c }], false)
}

fn parallel(net: &Network, i: usize, j: usize) -> Result<Network> {
    let m = net.edges().len();
    if i == j || i >= m || j >= m {
        return Err(Error::pre("parallel move needs two distinct edge indices"));
    }
    let (e, f) = (&net.edges()[i], &net.edges()[j]);
    if !((e.u == f.u && e.v == f.v) || (e.u == f.v && e.v == f.u)) {
        return Err(Error::pre(format!("edges {i} and {j} do not share both endpoints")));
    }
    let merged = Edge { u: e.u, v: e.v, conductance: &e.conductance + &f.conductance };
    rebuild(net, &[i, j], None, vec![merged], false)
}

fn pendant(net: &Network, v: usize) -> Result<Network> {
    let inc = interior_with_degree(net, v, 1)?;
    rebuild(net, &inc, Some(v), vec![], false)
}

fn wye_delta(net: &Network, v: usize) -> Result<Network> {
    let inc = interior_with_degree(net, v, 3)?;
    let ends: Vec<usize> = inc.iter().map(|&k| other(&net.edges()[k], v)).collect();
    if ends[0] == ends[1] || ends[1] == ends[2] || ends[0] == ends[2] {
        return Err(Error::pre(format!("neighbours of {v} are not distinct")));
    }
    let c: Vec<&Rational> = inc.iter().map(|&k| &net.edges()[k].conductance).collect();
    let sum = c[0] + c[1] + c[2];
    let add = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(p, q)| Edge { u: ends[p], v: ends[q], conductance: c[p] * c[q] / &sum })
        .collect();
    rebuild(net, &inc, Some(v), add, false)
}

fn delta_wye(net: &Network, ks: [usize; 3]) -> Result<Network> {
    let m = net.edges().len();
    if ks.iter().any(|&k| k >= m) || ks[0] == ks[1] || ks[1] == ks[2] || ks[0] == ks[2] {
        return Err(Error::pre("delta-wye needs three distinct edge indices"));
    }
    let es: Vec<&Edge> = ks.iter().map(|&k| &net.edges()[k]).collect();
    let mut corners: Vec<usize> = es.iter().flat_map(|e| [e.u, e.v]).collect();
    corners.sort_unstable();
    corners.dedup();
    if corners.len() != 3 {
        return Err(Error::pre("edges do not form a triangle"));
    }
    let has = |e: &Edge, x: usize| e.u == x || e.v == x;
    if !corners.iter().all(|&x| es.iter().filter(|e| has(e, x)).count() == 2) {
        return Err(Error::pre("edges do not form a triangle"));
    }
    // The wye conductance at a corner is S / (conductance of the opposite side).
    let s = &es[0].conductance * &es[1].conductance
        + &es[1].conductance * &es[2].conductance
        + &es[0].conductance * &es[2].conductance;
    let center = net.vertices() + 1;
    let add = corners
        .iter()
        .map(|&x| {
            let opposite = es.iter().find(|e| !has(e, x)).unwrap();
            Edge { u: x, v: center, conductance: &s / &opposite.conductance }
        })
        .collect();
    rebuild(net, &ks, None, add, true)
}
