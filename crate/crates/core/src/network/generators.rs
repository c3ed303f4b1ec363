use std::collections::HashMap;

use super::Network;
use crate::error::{Error, Result};

/// Which grid vertices become nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridNodes {
    /// The four corners.
    Corners,
    /// Every vertex on the outer boundary.
    Boundary,
    /// Positions along the boundary walk (0-based, see [`grid_graph`]),
    /// which must be increasing.
    Positions(Vec<usize>),
}

/// `rows x cols` square grid with unit conductances. Vertex `(r, c)` has id
/// `r * cols + c + 1`. Nodes are taken in counterclockwise order along the
/// boundary walk that starts at `(0, 0)`, runs along row 0, up the last
/// column, back along the last row and down column 0.
pub fn grid_graph(rows: usize, cols: usize, nodes: GridNodes) -> Result<Network> {
    if rows == 0 || cols == 0 {
        return Err(Error::pre("grid needs at least one row and column"));
    }
    let id = |r: usize, c: usize| r * cols + c + 1;
    let mut walk = Vec::new();
    for c in 0..cols {
        walk.push(id(0, c));
    }
    for r in 1..rows {
        walk.push(id(r, cols - 1));
    }
    if rows > 1 {
        for c in (0..cols - 1).rev() {
            walk.push(id(rows - 1, c));
        }
    }
    if cols > 1 {
        for r in (1..rows - 1).rev() {
            walk.push(id(r, 0));
        }
    }
    let chosen: Vec<usize> = match nodes {
        GridNodes::Boundary => walk.clone(),
        GridNodes::Corners => {
            let mut cs = vec![id(0, 0), id(0, cols - 1), id(rows - 1, cols - 1), id(rows - 1, 0)];
            cs.dedup();
            if cs.len() > 1 && cs[0] == cs[cs.len() - 1] {
                cs.pop();
            }
            cs
        }
        GridNodes::Positions(ps) => {
            if ps.windows(2).any(|w| w[0] >= w[1]) || ps.iter().any(|&p| p >= walk.len()) {
                return Err(Error::pre("boundary positions must be increasing and in range"));
            }
            ps.iter().map(|&p| walk[p]).collect()
        }
    };
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Network::unit(rows * cols, &pairs, chosen)
}

/// Triangular piece of the triangular lattice with side `n` and `3n` nodes.
///
/// Lattice points are `(i, j)` with `i + j <= n`, joined to `(i+1, j)`,
/// `(i, j+1)` and `(i+1, j-1)`. Nodes run counterclockwise from `(1, 0)`
/// along the bottom side to `(n, 0)`, up the long side to `(0, n)`, then
/// down to `(0, 0)`, so the corners are nodes `n`, `2n` and `3n`.
pub fn cs_graph(n: usize) -> Result<Network> {
    if n < 2 {
        return Err(Error::pre("the triangle needs side at least 2"));
    }
    let mut boundary = Vec::new();
    boundary.extend((1..=n).map(|i| (i, 0)));
    boundary.extend((1..=n).map(|k| (n - k, k)));
    boundary.extend((1..=n).map(|k| (0, n - k)));
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, &p) in boundary.iter().enumerate() {
        id.insert(p, k + 1);
    }
    let mut next = boundary.len() + 1;
    for i in 0..=n {
        for j in 0..=n - i {
            id.entry((i, j)).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
    }
    let mut pairs = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            let here = id[&(i, j)];
            let mut nbrs = vec![(i + 1, j), (i, j + 1)];
            if j > 0 {
                nbrs.push((i + 1, j - 1));
            }
            for q in nbrs {
                if let Some(&there) = id.get(&q) {
                    pairs.push((here, there));
                }
            }
        }
    }
    Network::unit(id.len(), &pairs, (1..=3 * n).collect())
}
