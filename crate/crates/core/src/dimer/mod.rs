//! Dimer covers and the double-dimer model on bipartite planar graphs.

mod brute;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::scalar::{format_rational, parse_rational};
use crate::linalg::{Matrix, MultiPoly, Rational, Scalar, Var};
use crate::network::{Edge, Network};
use crate::partition::{ColorSpec, Partition};
use num_traits::{Signed, Zero};

pub use brute::{count_matchings, dd_bruteforce, DD_EDGE_BOUND};

/// A bipartite plane graph with `2n` nodes on the outer face.
///
/// `faces` lists the bounded faces as vertex cycles; they drive the
/// Kasteleyn signing.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteNetwork {
    net: Network,
    black: Vec<bool>,
    faces: Vec<Vec<usize>>,
    signs: Vec<bool>,
}

impl BipartiteNetwork {
    /// `black[v-1]` gives the color of vertex `v`.
    pub fn new(net: Network, black: Vec<bool>, faces: Vec<Vec<usize>>) -> Result<Self> {
        if black.len() != net.vertices() {
            return Err(Error::pre("coloring length differs from vertex count"));
        }
        if !net.num_nodes().is_multiple_of(2) {
            return Err(Error::pre("the double-dimer model needs an even number of nodes"));
        }
        for e in net.edges() {
            if black[e.u - 1] == black[e.v - 1] {
                return Err(Error::pre(format!("edge {}-{} joins vertices of one color", e.u, e.v)));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for e in net.edges() {
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::pre(format!("parallel edges at {}-{}", e.u, e.v)));
            }
        }
        let signs = kasteleyn_signs(&net, &faces)?;
        Ok(BipartiteNetwork { net, black, faces, signs })
    }

    pub fn network(&self) -> &Network {
        &self.net
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black[v - 1]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Number of nodes, `2n`.
    pub fn num_nodes(&self) -> usize {
        self.net.num_nodes()
    }

    /// `true` for edges carrying a minus sign in the Kasteleyn matrix.
    pub fn kasteleyn_signs(&self) -> &[bool] {
        &self.signs
    }

    /// The whole graph as a dimer graph.
    pub fn dimer_graph(&self) -> DimerGraph {
        self.restrict(&vec![true; self.net.vertices()])
    }

    fn restrict(&self, keep: &[bool]) -> DimerGraph {
        let mut black = Vec::new();
        let mut white = Vec::new();
        for v in 1..=self.net.vertices() {
            if keep[v - 1] {
                if self.black[v - 1] {
                    black.push(v);
                } else {
                    white.push(v);
                }
            }
        }
        let edges = self
            .net
            .edges()
            .iter()
            .zip(&self.signs)
            .filter(|(e, _)| keep[e.u - 1] && keep[e.v - 1])
            .map(|(e, &neg)| {
                let (b, w) = if self.black[e.u - 1] { (e.u, e.v) } else { (e.v, e.u) };
                (b, w, e.conductance.clone(), neg)
            })
            .collect();
        DimerGraph { black, white, edges }
    }

    fn bw_mask(&self) -> Vec<bool> {
        let mut keep = vec![true; self.net.vertices()];
        for (k, &v) in self.net.nodes().iter().enumerate() {
            let odd = k % 2 == 0;
            keep[v - 1] = self.black[v - 1] == odd;
        }
        keep
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: BipartiteFile = serde_json::from_str(s).map_err(|e| Error::parse(format!("bipartite network JSON: {e}")))?;
        let edges = f
            .edges
            .into_iter()
            .map(|(u, v, c)| Ok(Edge { u, v, conductance: parse_rational(&c)? }))
            .collect::<Result<Vec<_>>>()?;
        let black = f
            .coloring
            .iter()
            .map(|c| match c.as_str() {
                "B" => Ok(true),
                "W" => Ok(false),
                other => Err(Error::parse(format!("vertex color {other:?}; expected \"B\" or \"W\""))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(Network::new(f.vertices, edges, f.nodes)?, black, f.faces)
    }

    pub fn to_json(&self) -> String {
        let f = BipartiteFile {
            vertices: self.net.vertices(),
            nodes: self.net.nodes().to_vec(),
            edges: self.net.edges().iter().map(|e| (e.u, e.v, format_rational(&e.conductance))).collect(),
            coloring: self.black.iter().map(|&b| if b { "B" } else { "W" }.to_string()).collect(),
            faces: self.faces.clone(),
        };
        serde_json::to_string(&f).expect("bipartite network serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BipartiteFile {
    vertices: usize,
    nodes: Vec<usize>,
    edges: Vec<(usize, usize, String)>,
    coloring: Vec<String>,
    faces: Vec<Vec<usize>>,
}

/// Chooses edge signs so that a bounded face of length `l` carries
/// `(-1)^(l/2+1)` as the product of its signs, by elimination over GF(2).
fn kasteleyn_signs(net: &Network, faces: &[Vec<usize>]) -> Result<Vec<bool>> {
    let m = net.edges().len();
    let index: std::collections::HashMap<(usize, usize), usize> =
        net.edges().iter().enumerate().map(|(k, e)| ((e.u.min(e.v), e.u.max(e.v)), k)).collect();
    let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
    for f in faces {
        if f.len() < 4 || f.len() % 2 != 0 {
            return Err(Error::pre(format!("face {f:?} is not an even cycle")));
        }
        let mut row = vec![false; m];
        for k in 0..f.len() {
            let (a, b) = (f[k], f[(k + 1) % f.len()]);
            let e = index
                .get(&(a.min(b), a.max(b)))
                .ok_or_else(|| Error::pre(format!("face {f:?} uses missing edge {a}-{b}")))?;
            row[*e] ^= true;
        }
        rows.push((row, (f.len() / 2 + 1) % 2 == 1));
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[col]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i].0[col] {
                let (src, rhs) = rows[r].clone();
                for (x, y) in rows[i].0.iter_mut().zip(&src) {
                    *x ^= *y;
                }
                rows[i].1 ^= rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return Err(Error::pre("faces admit no Kasteleyn signing"));
    }
    let mut signs = vec![false; m];
    for (i, &col) in pivots.iter().enumerate() {
        signs[col] = rows[i].1;
    }
    Ok(signs)
}

/// A bipartite graph with signed edge weights, ready for a determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct DimerGraph {
    black: Vec<usize>,
    white: Vec<usize>,
    /// `(black, white, weight, negated)`.
    edges: Vec<(usize, usize, Rational, bool)>,
}

impl DimerGraph {
    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn white(&self) -> &[usize] {
        &self.white
    }

    pub fn num_vertices(&self) -> usize {
        self.black.len() + self.white.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(b, w, x, _)| (*b, *w, x))
    }

    /// The black-by-white Kasteleyn matrix.
    pub fn kasteleyn_matrix(&self) -> Matrix<Rational> {
        let mut k = Matrix::zeros(self.black.len(), self.white.len());
        for (b, w, x, neg) in &self.edges {
            let i = self.black.binary_search(b).expect("black endpoint kept");
            let j = self.white.binary_search(w).expect("white endpoint kept");
            k[(i, j)] = if *neg { -x.clone() } else { x.clone() };
        }
        k
    }
}

/// Weighted number of perfect matchings, as `|det K|`; zero when the color
/// classes have different sizes.
pub fn dimer_partition_function(g: &DimerGraph) -> Rational {
    if g.black.len() != g.white.len() {
        return Rational::zero();
    }
    g.kasteleyn_matrix().det_bareiss().abs()
}

/// `G^BW`: nodes are kept when black and odd or white and even.
pub fn gbw(g: &BipartiteNetwork) -> DimerGraph {
    g.restrict(&g.bw_mask())
}

/// `G^WB`: the complementary node selection.
pub fn gwb(g: &BipartiteNetwork) -> DimerGraph {
    let mut keep = g.bw_mask();
    for &v in g.network().nodes() {
        keep[v - 1] = !keep[v - 1];
    }
    g.restrict(&keep)
}

/// `G^BW_{i,j}`: as `G^BW` with the membership of nodes `i` and `j` toggled.
pub fn gbw_ij(g: &BipartiteNetwork, i: usize, j: usize) -> Result<DimerGraph> {
    let n = g.num_nodes();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::pre(format!("need two distinct nodes in 1..={n}, got {i} and {j}")));
    }
    let mut keep = g.bw_mask();
    for k in [i, j] {
        let v = g.network().nodes()[k - 1];
        keep[v - 1] = !keep[v - 1];
    }
    Ok(g.restrict(&keep))
}

/// `X[i,j] = Z^BW_{i,j} / Z^BW` for nodes of opposite parity; entries for
/// equal parity are structural zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct XMatrix {
    entries: Matrix<Rational>,
}

impl XMatrix {
    /// Builds from explicit values, checking shape, symmetry and the parity
    /// zeros.
    pub fn new(entries: Matrix<Rational>) -> Result<Self> {
        let m = entries.rows();
        if !entries.is_square() || !m.is_multiple_of(2) || !entries.is_symmetric() {
            return Err(Error::shape("X needs a symmetric matrix of even size"));
        }
        for i in 0..m {
            for j in 0..m {
                if (i + j) % 2 == 0 && !entries[(i, j)].is_zero() {
                    return Err(Error::pre(format!("X[{},{}] must vanish", i + 1, j + 1)));
                }
            }
        }
        Ok(XMatrix { entries })
    }

    /// Number of nodes, `2n`.
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    /// 1-based entry.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1, j - 1)]
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.entries
    }
}

pub fn x_matrix(g: &BipartiteNetwork) -> Result<XMatrix> {
    let z = dimer_partition_function(&gbw(g));
    if z.is_zero() {
        return Err(Error::pre("G^BW has no perfect matching"));
    }
    let m = g.num_nodes();
    let mut x = Matrix::zeros(m, m);
    for i in 1..=m {
        for j in (i + 1..=m).step_by(2) {
            let v = dimer_partition_function(&gbw_ij(g, i, j)?) / &z;
            x[(i - 1, j - 1)] = v.clone();
            x[(j - 1, i - 1)] = v;
        }
    }
    XMatrix::new(x)
}

/// The planar pairing of `c`, with its rows (odd nodes) and columns (their
/// partners).
fn tripartite_pairing(c: &ColorSpec) -> Result<(Partition, Vec<usize>)> {
    let sigma = c.tripartite_partition()?;
    if sigma.parts().iter().any(|p| p.len() != 2) {
        return Err(Error::pre(format!("{sigma} is not a pairing")));
    }
    let partner: Vec<usize> = (1..=c.n())
        .step_by(2)
        .map(|i| {
            let p = sigma.part_of(i).expect("every node has a part");
            if p[0] == i { p[1] } else { p[0] }
        })
        .collect();
    Ok((sigma, partner))
}

/// `det[1_{i,j colored differently} X[i,j]]` with rows `1,3,...,2n-1` and
/// columns `σ_1, σ_3, ..., σ_{2n-1}`, for any entry type.
pub fn dd_tripartite_det<T: Scalar>(x: impl Fn(usize, usize) -> T, c: &ColorSpec) -> Result<T> {
    if !c.n().is_multiple_of(2) {
        return Err(Error::pre("the double-dimer model needs an even number of nodes"));
    }
    let (_, cols) = tripartite_pairing(c)?;
    let rows: Vec<usize> = (1..=c.n()).step_by(2).collect();
    let m = Matrix::from_fn(rows.len(), cols.len(), |a, b| {
        let (i, j) = (rows[a], cols[b]);
        if c.color(i) != c.color(j) { x(i, j) } else { T::zero() }
    });
    m.det()
}

/// Normalized probability `Pr(σ) Z^WB / Z^BW` of the tripartite pairing of
/// `c`.
pub fn dd_tripartite_prob(x: &XMatrix, c: &ColorSpec) -> Result<Rational> {
    if c.n() != x.size() {
        return Err(Error::shape(format!("{} colors for {} nodes", c.n(), x.size())));
    }
    dd_tripartite_det(|i, j| x.get(i, j).clone(), c)
}

/// The same determinant in the variables `X[i,j]`.
pub fn dd_tripartite_symbolic(c: &ColorSpec) -> Result<MultiPoly> {
    dd_tripartite_det(|i, j| MultiPoly::var(Var::x(i, j)), c)
}

/// Replaces `L[i,j]` by `0` when `i` and `j` have equal parity and by
/// `(-1)^((|i-j|-1)/2) X[i,j]` otherwise.
pub fn l_to_x_substitute(p: &MultiPoly) -> MultiPoly {
    p.substitute(|v| match v {
        Var::L(i, j) if (i + j) % 2 == 0 => MultiPoly::zero(),
        Var::L(i, j) => {
            let x = MultiPoly::var(Var::x(i as usize, j as usize));
            if ((j - i - 1) / 2) % 2 == 0 { x } else { -x }
        }
        other => MultiPoly::var(other),
    })
}

/// `(-1)^ν` where `ν = Σ (|i-j|-1)/2` over the pairs of `σ`, the sign the
/// substitution puts on the monomial of `σ` itself. Substituting into
/// `pû(σ)` gives this sign times the double-dimer polynomial.
pub fn substitution_sign(sigma: &Partition) -> Result<i64> {
    let mut nu = 0;
    for p in sigma.parts() {
        if p.len() != 2 {
            return Err(Error::pre(format!("{sigma} is not a pairing")));
        }
        nu += (p[1] - p[0] - 1) / 2;
    }
    Ok(if nu % 2 == 0 { 1 } else { -1 })
}

/// Bipartite grid with black `(0,0)`, unit squares as faces and nodes taken
/// as in [`crate::network::grid_graph`].
pub fn grid_bipartite(rows: usize, cols: usize, nodes: crate::network::GridNodes) -> Result<BipartiteNetwork> {
    let net = crate::network::grid_graph(rows, cols, nodes)?;
    let black = (0..rows * cols).map(|k| (k / cols + k % cols).is_multiple_of(2)).collect();
    let id = |r: usize, c: usize| r * cols + c + 1;
    let mut faces = Vec::new();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            faces.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1), id(r + 1, c)]);
        }
    }
    BipartiteNetwork::new(net, black, faces)
}
