use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Network};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// A point of the half-integer drawing of the standard graph.
pub type Point = (i64, i64);

/// An edge of the standard graph together with the two faces it separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardEdge {
    /// The pair of boundary positions `a < b` whose geodesics cross here.
    pub chord: (usize, usize),
    pub crossing: Point,
    pub ends: (usize, usize),
    /// Indices into [`StandardGraph::faces`].
    pub faces: (usize, usize),
}

/// The standard critical graph with `n` nodes, drawn from the arrangement of
/// the `n(n-1)/2` chords between boundary positions.
///
/// Chord `(a, b)` meets the others at the crossing point `(b - a, a + b)`.
/// Points `(X, Y)` with `X` odd and `Y` even are vertices, the ones with `X`
/// even and `Y` odd are faces. A crossing with odd `X` is a vertical edge
/// between `(X, Y±1)`; one with even `X` is a horizontal edge between
/// `(X±1, Y)`. Vertices all of whose four diagonal neighbours are crossings or
/// lie on the line `X = 0` are interior; the rest are nodes.
#[derive(Debug, Clone)]
pub struct StandardGraph {
    pub n: usize,
    pub network: Network,
    /// Coordinates of vertex `v` at index `v - 1`.
    pub coords: Vec<Point>,
    pub edges: Vec<StandardEdge>,
    /// Face points in increasing order.
    pub faces: Vec<Point>,
    vertex_at: BTreeMap<Point, usize>,
}

/// Builds the standard graph on `n` nodes. Edges are ordered by chord,
/// interior vertices are numbered from `n + 1` in coordinate order, and
/// `conductances` (one per edge) default to one.
pub fn standard_graph(n: usize, conductances: Option<&[Rational]>) -> Result<StandardGraph> {
    if n == 0 {
        return Err(Error::pre("the standard graph needs at least one node"));
    }
    let mut crossings: BTreeMap<Point, (usize, usize)> = BTreeMap::new();
    for a in 1..=n {
        for b in a + 1..=n {
            crossings.insert(((b - a) as i64, (a + b) as i64), (a, b));
        }
    }
    let mut verts = BTreeSet::new();
    let mut faces = BTreeSet::new();
    let split = |(x, y): Point| -> ([Point; 2], [Point; 2]) {
        if x % 2 == 1 {
            ([(x, y - 1), (x, y + 1)], [(x - 1, y), (x + 1, y)])
        } else {
            ([(x - 1, y), (x + 1, y)], [(x, y - 1), (x, y + 1)])
        }
    };
    for &c in crossings.keys() {
        let (vs, fs) = split(c);
        verts.extend(vs);
        faces.extend(fs);
    }
    if n == 1 {
        verts.insert((1, 2));
    }
    let is_interior = |&(x, y): &Point| {
        [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)].iter().all(|q| crossings.contains_key(q) || q.0 == 0)
    };
    let apex = (n + 1) as i64;
    let mut lower = Vec::new();
    let mut middle = Vec::new();
    let mut upper = Vec::new();
    let mut interior = Vec::new();
    for &v in &verts {
        if n > 1 && is_interior(&v) {
            interior.push(v);
        } else if v.1 < apex {
            lower.push(v);
        } else if v.1 == apex {
            middle.push(v);
        } else {
            upper.push(v);
        }
    }
    lower.sort_by_key(|&(x, y)| (x, -y));
    upper.sort_by_key(|&(x, y)| (-x, -y));
    if lower.len() + middle.len() + upper.len() != n {
        return Err(Error::Invariant(format!("standard graph on {n} nodes has a malformed boundary")));
    }
    let order: Vec<Point> = lower.into_iter().chain(middle).chain(upper).chain(interior).collect();
    let vertex_at: BTreeMap<Point, usize> = order.iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
    let faces: Vec<Point> = faces.into_iter().collect();
    let face_index = |p: &Point| faces.binary_search(p).expect("face point");
    let mut by_chord: Vec<(&(usize, usize), &Point)> = crossings.iter().map(|(p, c)| (c, p)).collect();
    by_chord.sort();
    let mut edges = Vec::new();
    let mut net_edges = Vec::new();
    for (k, (&chord, &crossing)) in by_chord.into_iter().enumerate() {
        let (vs, fs) = split(crossing);
        let ends = (vertex_at[&vs[0]], vertex_at[&vs[1]]);
        edges.push(StandardEdge { chord, crossing, ends, faces: (face_index(&fs[0]), face_index(&fs[1])) });
        let conductance = match conductances {
            Some(cs) => cs.get(k).cloned().ok_or_else(|| Error::pre("too few conductances"))?,
            None => Rational::from_integer(1.into()),
        };
        net_edges.push(Edge { u: ends.0, v: ends.1, conductance });
    }
    if conductances.is_some_and(|cs| cs.len() != edges.len()) {
        return Err(Error::pre(format!("expected {} conductances", edges.len())));
    }
    let network = Network::new(order.len(), net_edges, (1..=n).collect())?;
    Ok(StandardGraph { n, network, coords: order, edges, faces, vertex_at })
}

impl StandardGraph {
    /// Vertex id at a point, if the point is a vertex.
    pub fn vertex_at(&self, p: Point) -> Option<usize> {
        self.vertex_at.get(&p).copied()
    }

    pub fn is_face(&self, p: Point) -> bool {
        self.faces.binary_search(&p).is_ok()
    }

    pub fn is_node_vertex(&self, v: usize) -> bool {
        v <= self.n
    }
}
