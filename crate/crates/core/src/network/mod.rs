//! Circular planar networks and their boundary response.

mod generators;
mod standard;
mod transform;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::scalar::{format_rational, parse_rational};
use crate::linalg::{Matrix, Rational};
use num_traits::{Signed, Zero};

pub use generators::{cs_graph, grid_graph, GridNodes};
pub use standard::{standard_graph, Point, StandardEdge, StandardGraph};
pub use transform::{apply_transform, Move};

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: Rational,
}

/// A weighted graph on vertices `1..=vertices` with boundary nodes listed in
/// counterclockwise order. Node `i` of the network is `nodes[i-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    vertices: usize,
    edges: Vec<Edge>,
    nodes: Vec<usize>,
}

impl Network {
    pub fn new(vertices: usize, edges: Vec<Edge>, nodes: Vec<usize>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::pre("a network needs at least one node"));
        }
        let mut seen = vec![false; vertices + 1];
        for &x in &nodes {
            if x == 0 || x > vertices {
                return Err(Error::pre(format!("node vertex {x} out of range")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::pre(format!("vertex {x} listed twice as a node")));
            }
        }
        for e in &edges {
            if e.u == 0 || e.v == 0 || e.u > vertices || e.v > vertices {
                return Err(Error::pre(format!("edge {}-{} out of range", e.u, e.v)));
            }
            if e.u == e.v {
                return Err(Error::pre(format!("self-loop at {}", e.u)));
            }
            if !e.conductance.is_positive() {
                return Err(Error::pre(format!("edge {}-{} has non-positive conductance", e.u, e.v)));
            }
        }
        Ok(Network { vertices, edges, nodes })
    }

    /// Unit conductances on the given vertex pairs.
    pub fn unit(vertices: usize, pairs: &[(usize, usize)], nodes: Vec<usize>) -> Result<Self> {
        let one = Rational::from_integer(1.into());
        let edges = pairs.iter().map(|&(u, v)| Edge { u, v, conductance: one.clone() }).collect();
        Self::new(vertices, edges, nodes)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Vertices that are not nodes, in increasing order.
    pub fn interior(&self) -> Vec<usize> {
        (1..=self.vertices).filter(|v| !self.nodes.contains(v)).collect()
    }

    pub fn is_node(&self, v: usize) -> bool {
        self.nodes.contains(&v)
    }

    /// Replaces edge conductances; `f` gets the edge index and edge.
    pub fn with_conductances(&self, mut f: impl FnMut(usize, &Edge) -> Rational) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| Edge { u: e.u, v: e.v, conductance: f(k, e) })
            .collect();
        Self::new(self.vertices, edges, self.nodes.clone())
    }

    /// Indices of the edges at `v`.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&k| self.edges[k].u == v || self.edges[k].v == v).collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: NetworkFile = serde_json::from_str(s).map_err(|e| Error::parse(format!("network JSON: {e}")))?;
        let edges = f
            .edges
            .into_iter()
            .map(|(u, v, c)| Ok(Edge { u, v, conductance: parse_rational(&c)? }))
            .collect::<Result<Vec<_>>>()?;
        Network::new(f.vertices, edges, f.nodes)
    }

    pub fn to_json(&self) -> String {
        let f = NetworkFile {
            vertices: self.vertices,
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|e| (e.u, e.v, format_rational(&e.conductance))).collect(),
        };
        serde_json::to_string(&f).expect("network serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    vertices: usize,
    nodes: Vec<usize>,
    edges: Vec<(usize, usize, String)>,
}

/// Weighted Laplacian, indexed by vertex id minus one.
pub fn laplacian(net: &Network) -> Matrix<Rational> {
    let mut k = Matrix::zeros(net.vertices, net.vertices);
    for e in &net.edges {
        let (u, v) = (e.u - 1, e.v - 1);
        let c = &e.conductance;
        k[(u, u)] += c.clone();
        k[(v, v)] += c.clone();
        k[(u, v)] -= c.clone();
        k[(v, u)] -= c.clone();
    }
    k
}

/// Response matrix `L`: maps node potentials to net currents out of the
/// network, so that off-diagonal entries are nonnegative and rows sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix {
    m: Matrix<Rational>,
}

impl ResponseMatrix {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::pre("response matrix must be square and symmetric"));
        }
        for i in 0..m.rows() {
            if !m.row(i).iter().fold(Rational::zero(), |a, b| a + b).is_zero() {
                return Err(Error::pre(format!("row {} does not sum to zero", i + 1)));
            }
        }
        Ok(ResponseMatrix { m })
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    /// Entry for nodes `i, j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.m[(i - 1, j - 1)]
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }

    /// `L` with the row and column of node `n` removed.
    pub fn grounded(&self) -> Matrix<Rational> {
        let keep: Vec<usize> = (0..self.n().saturating_sub(1)).collect();
        self.m.select(&keep, &keep)
    }

    /// Solves `L x = b` for a right side summing to zero, normalized so
    /// the last potential is zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.n();
        if b.len() != n {
            return Err(Error::shape("right side has the wrong length"));
        }
        if !b.iter().fold(Rational::zero(), |a, x| a + x).is_zero() {
            return Err(Error::pre("right side is not orthogonal to the constants"));
        }
        let mut x = self
            .grounded()
            .solve(&b[..n - 1])
            .map_err(|_| Error::pre("network is disconnected: response matrix has a larger kernel"))?;
        x.push(Rational::zero());
        Ok(x)
    }

    /// `det(-L̃)`: the ratio `Z(uncrossing) / Z(spanning trees)`.
    pub fn uncrossing_tree_ratio(&self) -> Result<Rational> {
        self.grounded().neg().det()
    }

    pub fn to_json(&self) -> serde_json::Value {
        matrix_json("L", &self.m)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::new(matrix_from_json(s, "L")?)
    }
}

/// Pairwise effective resistances between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix {
    m: Matrix<Rational>,
}

impl ResistanceMatrix {
    pub fn n(&self) -> usize {
        self.m.rows()
    }

    /// Resistance between nodes `i, j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.m[(i - 1, j - 1)]
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }

    pub fn to_json(&self) -> serde_json::Value {
        matrix_json("R", &self.m)
    }
}

fn matrix_json(key: &str, m: &Matrix<Rational>) -> serde_json::Value {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
    let mut obj = serde_json::Map::new();
    obj.insert("n".into(), m.rows().into());
    obj.insert(key.into(), serde_json::to_value(rows).expect("strings serialize"));
    serde_json::Value::Object(obj)
}

fn matrix_from_json(s: &str, key: &str) -> Result<Matrix<Rational>> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::parse(format!("matrix JSON: {e}")))?;
    let n = v.get("n").and_then(serde_json::Value::as_u64).ok_or_else(|| Error::parse("missing `n`"))? as usize;
    let rows: Vec<Vec<String>> = serde_json::from_value(v.get(key).cloned().unwrap_or_default())
        .map_err(|e| Error::parse(format!("`{key}`: {e}")))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::parse(format!("`{key}` is not {n}x{n}")));
    }
    let rows = rows.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

/// `L = -(K_NN - K_NI K_II^-1 K_IN)`.
pub fn response_matrix(net: &Network) -> Result<ResponseMatrix> {
    let k = laplacian(net);
    let keep: Vec<usize> = net.nodes.iter().map(|&v| v - 1).collect();
    let s = k.schur_complement(&keep).map_err(|e| match e {
        Error::Singular(_) => Error::pre("an interior component does not reach any node"),
        other => other,
    })?;
    ResponseMatrix::new(s.neg())
}

/// `R_ij = -(δ_i - δ_j)·x` where `L x = δ_i - δ_j`.
pub fn resistance_matrix(l: &ResponseMatrix) -> Result<ResistanceMatrix> {
    let n = l.n();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut b = vec![Rational::zero(); n];
            b[i] = Rational::from_integer(1.into());
            b[j] = Rational::from_integer((-1).into());
            let x = l.solve(&b)?;
            let r = x[j].clone() - x[i].clone();
            m[(i, j)] = r.clone();
            m[(j, i)] = r;
        }
    }
    Ok(ResistanceMatrix { m })
}

/// Resistances from `M = (-L̃)^-1` as `M_ii + M_jj - 2 M_ij`, with `M` padded
/// by zeros for the grounded node.
pub fn resistance_via_grounded_inverse(l: &ResponseMatrix) -> Result<ResistanceMatrix> {
    let n = l.n();
    let inv = l.grounded().neg().inverse().map_err(|_| Error::pre("network is disconnected"))?;
    let at = |i: usize, j: usize| if i == n - 1 || j == n - 1 { Rational::zero() } else { inv[(i, j)].clone() };
    let two = Rational::from_integer(2.into());
    let m = Matrix::from_fn(n, n, |i, j| at(i, i) + at(j, j) - two.clone() * at(i, j));
    Ok(ResistanceMatrix { m })
}

/// Response matrix of the planar dual, on dual nodes `i'` lying between
/// nodes `i` and `i+1`: `L*_{i'j'} = (δ_i - δ_{i+1})·x` with
/// `L x = δ_j - δ_{j+1}`.
pub fn dual_response(l: &ResponseMatrix) -> Result<ResponseMatrix> {
    let n = l.n();
    let diff = |i: usize| {
        let mut b = vec![Rational::zero(); n];
        b[i] += Rational::from_integer(1.into());
        b[(i + 1) % n] -= Rational::from_integer(1.into());
        b
    };
    let xs: Vec<Vec<Rational>> = (0..n).map(|j| l.solve(&diff(j))).collect::<Result<_>>()?;
    let m = Matrix::from_fn(n, n, |i, j| {
        let a = diff(i);
        a.iter().zip(&xs[j]).fold(Rational::zero(), |s, (p, q)| s + p * q)
    });
    ResponseMatrix::new(m)
}
