use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{BipartiteNetwork, DimerGraph};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::partition::Partition;

/// Largest edge count accepted by [`dd_bruteforce`].
pub const DD_EDGE_BOUND: usize = 32;

/// Weighted number of perfect matchings by direct search.
pub fn count_matchings(g: &DimerGraph) -> Rational {
    if g.black.len() != g.white.len() {
        return Rational::zero();
    }
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); g.black.len()];
    for (b, w, x, _) in &g.edges {
        let i = g.black.binary_search(b).expect("black endpoint kept");
        let j = g.white.binary_search(w).expect("white endpoint kept");
        adj[i].push((j, x.clone()));
    }
    fn go(i: usize, adj: &[Vec<(usize, Rational)>], used: &mut [bool]) -> Rational {
        if i == adj.len() {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for (j, x) in &adj[i] {
            if !used[*j] {
                used[*j] = true;
                total += x * go(i + 1, adj, used);
                used[*j] = false;
            }
        }
        total
    }
    go(0, &adj, &mut vec![false; g.white.len()])
}

/// `Z^DD(π)` for every node pairing `π` that occurs, summing over edge
/// multisets with degree one at nodes and two elsewhere. Doubled edges count
/// their weight twice and each loop contributes a factor of two.
pub fn dd_bruteforce(g: &BipartiteNetwork) -> Result<BTreeMap<Partition, Rational>> {
    let net = g.network();
    let edges = net.edges();
    if edges.len() > DD_EDGE_BOUND {
        return Err(Error::TooLarge(format!(
            "{} edges exceed the double-dimer enumeration bound of {DD_EDGE_BOUND}",
            edges.len()
        )));
    }
    let nv = net.vertices();
    let target: Vec<u8> = (0..=nv).map(|v| if v > 0 && net.is_node(v) { 1 } else { 2 }).collect();
    let mut last = vec![None; nv + 1];
    for (k, e) in edges.iter().enumerate() {
        last[e.u] = Some(k);
        last[e.v] = Some(k);
    }
    if (1..=nv).any(|v| last[v].is_none()) {
        return Ok(BTreeMap::new());
    }
    let mut search = Search {
        g,
        target,
        last,
        degree: vec![0; nv + 1],
        mult: vec![0; edges.len()],
        out: BTreeMap::new(),
    };
    search.go(0);
    Ok(search.out)
}

struct Search<'a> {
    g: &'a BipartiteNetwork,
    target: Vec<u8>,
    last: Vec<Option<usize>>,
    degree: Vec<u8>,
    mult: Vec<u8>,
    out: BTreeMap<Partition, Rational>,
}

impl Search<'_> {
    fn go(&mut self, k: usize) {
        let edges = self.g.network().edges();
        if k == edges.len() {
            self.record();
            return;
        }
        let (u, v) = (edges[k].u, edges[k].v);
        for m in 0..=2u8 {
            if self.degree[u] + m > self.target[u] || self.degree[v] + m > self.target[v] {
                break;
            }
            self.degree[u] += m;
            self.degree[v] += m;
            let closed = |s: &Self, x: usize| s.last[x] != Some(k) || s.degree[x] == s.target[x];
            if closed(self, u) && closed(self, v) {
                self.mult[k] = m;
                self.go(k + 1);
            }
            self.degree[u] -= m;
            self.degree[v] -= m;
        }
        self.mult[k] = 0;
    }

    fn record(&mut self) {
        let net = self.g.network();
        let nv = net.vertices();
        let mut parent: Vec<usize> = (0..=nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut weight = Rational::one();
        let mut touched = vec![false; nv + 1];
        for (e, &m) in net.edges().iter().zip(&self.mult) {
            for _ in 0..m {
                weight *= &e.conductance;
            }
            if m == 1 {
                touched[e.u] = true;
                touched[e.v] = true;
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                parent[a] = b;
            }
        }
        let mut has_node = vec![false; nv + 1];
        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, &v) in net.nodes().iter().enumerate() {
            let r = find(&mut parent, v);
            has_node[r] = true;
            ends.entry(r).or_default().push(k + 1);
        }
        let mut roots: Vec<usize> = (1..=nv).filter(|&v| touched[v]).map(|v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        for r in roots {
            if !has_node[r] {
                weight *= Rational::from_integer(2.into());
            }
        }
        let parts: Vec<Vec<usize>> = ends.into_values().collect();
        let pairing = Partition::new(net.num_nodes(), parts).expect("paths pair the nodes");
        *self.out.entry(pairing).or_insert_with(Rational::zero) += weight;
    }
}
