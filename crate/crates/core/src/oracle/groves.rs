use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{Rational, Scalar};
use crate::network::{Edge, Network};
use crate::partition::Partition;

/// Largest edge count accepted by [`enumerate_groves_by_subsets`].
pub const SUBSET_EDGE_BOUND: usize = 22;

/// Weighted grove sums `Z(σ)` keyed by the node partition `σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroveTable<T> {
    n: usize,
    z: BTreeMap<Partition, T>,
}

impl<T: Scalar> GroveTable<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Z(σ)`; zero when no grove has type `σ`.
    pub fn get(&self, p: &Partition) -> T {
        self.z.get(p).cloned().unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &T)> {
        self.z.iter()
    }

    pub fn total(&self) -> T {
        self.z.values().fold(T::zero(), |a, b| a + b.clone())
    }

    /// `Z(1|2|...|n)`.
    pub fn uncrossing(&self) -> T {
        self.get(&Partition::singletons(self.n))
    }
}

impl GroveTable<Rational> {
    /// `Z(σ) / Z(1|2|...|n)`.
    pub fn ratio(&self, p: &Partition) -> Result<Rational> {
        let u = self.uncrossing();
        if num_traits::Zero::is_zero(&u) {
            return Err(Error::pre("network has no groves"));
        }
        Ok(self.get(p) / u)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (p, z) in &self.z {
            m.insert(p.to_string(), crate::linalg::format_rational(z).into());
        }
        let mut out = serde_json::Map::new();
        out.insert("n".into(), self.n.into());
        out.insert("groves".into(), serde_json::Value::Object(m));
        out.insert("total".into(), crate::linalg::format_rational(&self.total()).into());
        serde_json::Value::Object(out)
    }
}

/// Grove sums with edge conductances as weights.
pub fn enumerate_groves(net: &Network) -> GroveTable<Rational> {
    enumerate_groves_with(net, |_, e| e.conductance.clone())
}

/// Grove sums by a sweep over the edges that keeps, for every way of
/// connecting the nodes and the vertices still in play, the total weight of
/// the partial forests doing so. Components that lose their last open vertex
/// without reaching a node are discarded.
pub fn enumerate_groves_with<T: Scalar>(net: &Network, weight: impl Fn(usize, &Edge) -> T) -> GroveTable<T> {
    let n = net.num_nodes();
    let nv = net.vertices();
    let order = sweep_order(net);
    let edges = net.edges();
    let mut first = vec![usize::MAX; nv + 1];
    let mut last = vec![usize::MAX; nv + 1];
    for (step, &k) in order.iter().enumerate() {
        for v in [edges[k].u, edges[k].v] {
            if first[v] == usize::MAX {
                first[v] = step;
            }
            last[v] = step;
        }
    }
    let mut z = BTreeMap::new();
    if net.interior().iter().any(|&v| first[v] == usize::MAX) {
        // An isolated interior vertex cannot join a node.
        return GroveTable { n, z };
    }
    // Tracked vertices: the nodes, then open interior vertices.
    let mut tracked: Vec<usize> = net.nodes().to_vec();
    let mut states: HashMap<Vec<u16>, T> = HashMap::new();
    states.insert((0..n as u16).collect(), T::one());
    for (step, &k) in order.iter().enumerate() {
        let e = &edges[k];
        for v in [e.u, e.v] {
            if first[v] == step && !net.is_node(v) && !tracked.contains(&v) {
                tracked.push(v);
                // Keys stay canonical: the new label is the next unused one.
                states = states
                    .into_iter()
                    .map(|(mut key, w)| {
                        let fresh = key.iter().max().map_or(0, |m| m + 1);
                        key.push(fresh);
                        (key, w)
                    })
                    .collect();
            }
        }
        let iu = tracked.iter().position(|&x| x == e.u).unwrap();
        let iv = tracked.iter().position(|&x| x == e.v).unwrap();
        let we = weight(k, e);
        let mut next: HashMap<Vec<u16>, T> = HashMap::with_capacity(states.len() * 2);
        for (key, w) in states {
            if key[iu] != key[iv] {
                let (from, to) = (key[iv], key[iu]);
                let merged: Vec<u16> = key.iter().map(|&x| if x == from { to } else { x }).collect();
                add(&mut next, canonical(merged), w.clone() * we.clone());
            }
            add(&mut next, key, w);
        }
        // Retire interior vertices whose last edge this was.
        let retiring: Vec<usize> =
            (0..tracked.len()).filter(|&i| !net.is_node(tracked[i]) && last[tracked[i]] == step).collect();
        if !retiring.is_empty() {
            let mut pruned: HashMap<Vec<u16>, T> = HashMap::with_capacity(next.len());
            for (key, w) in next {
                let alive = retiring.iter().all(|&i| {
                    key.iter().enumerate().any(|(j, &x)| x == key[i] && !retiring.contains(&j))
                });
                if alive {
                    let kept: Vec<u16> =
                        key.iter().enumerate().filter(|(j, _)| !retiring.contains(j)).map(|(_, &x)| x).collect();
                    add(&mut pruned, canonical(kept), w);
                }
            }
            next = pruned;
            let mut j = 0;
            tracked.retain(|_| {
                j += 1;
                !retiring.contains(&(j - 1))
            });
        }
        states = next;
    }
    for (key, w) in states {
        let mut parts: BTreeMap<u16, Vec<usize>> = BTreeMap::new();
        for (i, &x) in key.iter().take(n).enumerate() {
            parts.entry(x).or_default().push(i + 1);
        }
        let p = Partition::new(n, parts.into_values().collect()).expect("labels cover the nodes");
        let slot = z.entry(p).or_insert_with(T::zero);
        *slot = slot.clone() + w;
    }
    z.retain(|_, w: &mut T| !w.is_zero());
    GroveTable { n, z }
}

fn add<T: Scalar>(m: &mut HashMap<Vec<u16>, T>, key: Vec<u16>, w: T) {
    match m.get_mut(&key) {
        Some(slot) => *slot = slot.clone() + w,
        None => {
            m.insert(key, w);
        }
    }
}

/// Relabels components by first appearance.
fn canonical(key: Vec<u16>) -> Vec<u16> {
    let mut map: Vec<(u16, u16)> = Vec::new();
    key.into_iter()
        .map(|x| match map.iter().find(|(a, _)| *a == x) {
            Some(&(_, b)) => b,
            None => {
                let b = map.len() as u16;
                map.push((x, b));
                b
            }
        })
        .collect()
}

/// Edges ordered by breadth-first discovery from the nodes, which keeps the
/// set of open vertices small on grid-like graphs.
fn sweep_order(net: &Network) -> Vec<usize> {
    let nv = net.vertices();
    let mut rank = vec![usize::MAX; nv + 1];
    let mut queue = std::collections::VecDeque::new();
    let mut adj = vec![Vec::new(); nv + 1];
    for e in net.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut r = 0;
    for &s in net.nodes() {
        if rank[s] != usize::MAX {
            continue;
        }
        rank[s] = r;
        r += 1;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if rank[y] == usize::MAX {
                    rank[y] = r;
                    r += 1;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..net.edges().len()).collect();
    idx.sort_by_key(|&k| {
        let e = &net.edges()[k];
        let (a, b) = (rank[e.u].min(rank[e.v]), rank[e.u].max(rank[e.v]));
        (b, a, k)
    });
    idx
}

/// Independent oracle: checks every subset of edges.
pub fn enumerate_groves_by_subsets<T: Scalar>(
    net: &Network,
    weight: impl Fn(usize, &Edge) -> T,
) -> Result<GroveTable<T>> {
    let m = net.edges().len();
    if m > SUBSET_EDGE_BOUND {
        return Err(Error::TooLarge(format!("{m} edges exceeds the subset bound {SUBSET_EDGE_BOUND}")));
    }
    let n = net.num_nodes();
    let nv = net.vertices();
    let ws: Vec<T> = net.edges().iter().enumerate().map(|(k, e)| weight(k, e)).collect();
    let mut node_index = vec![0; nv + 1];
    for (i, &v) in net.nodes().iter().enumerate() {
        node_index[v] = i + 1;
    }
    let mut z: BTreeMap<Partition, T> = BTreeMap::new();
    'subsets: for mask in 0u64..(1u64 << m) {
        let mut parent: Vec<usize> = (0..=nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut w = T::one();
        for (k, e) in net.edges().iter().enumerate() {
            if mask >> k & 1 == 1 {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                if a == b {
                    continue 'subsets;
                }
                parent[a] = b;
                w = w * ws[k].clone();
            }
        }
        let mut has_node = vec![false; nv + 1];
        for &v in net.nodes() {
            let r = find(&mut parent, v);
            has_node[r] = true;
        }
        if (1..=nv).any(|v| !has_node[find(&mut parent, v)]) {
            continue;
        }
        let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in net.nodes() {
            let r = find(&mut parent, v);
            parts.entry(r).or_default().push(node_index[v]);
        }
        let p = Partition::new(n, parts.into_values().collect()).expect("nodes covered");
        let slot = z.entry(p).or_insert_with(T::zero);
        *slot = slot.clone() + w;
    }
    Ok(GroveTable { n, z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, rat};
    use crate::network::{grid_graph, GridNodes};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn single_edge_and_series() {
        let net = Network::new(2, vec![Edge { u: 1, v: 2, conductance: int(3) }], vec![1, 2]).unwrap();
        let t = enumerate_groves(&net);
        assert_eq!(t.get(&p("12")), int(3));
        assert_eq!(t.get(&p("1|2")), int(1));
        let (a, b) = (rat(1, 2), int(5));
        let path = Network::new(
            3,
            vec![Edge { u: 1, v: 3, conductance: a.clone() }, Edge { u: 3, v: 2, conductance: b.clone() }],
            vec![1, 2],
        )
        .unwrap();
        let t = enumerate_groves(&path);
        assert_eq!(t.get(&p("12")), &a * &b);
        assert_eq!(t.get(&p("1|2")), &a + &b);
    }

    #[test]
    fn sweep_agrees_with_subsets() {
        let nets = [
            grid_graph(3, 3, GridNodes::Corners).unwrap(),
            grid_graph(3, 3, GridNodes::Boundary).unwrap(),
            grid_graph(2, 4, GridNodes::Positions(vec![0, 2, 3, 5, 6])).unwrap(),
        ];
        for net in &nets {
            let net = net.with_conductances(|k, _| rat(k as i64 % 3 + 1, k as i64 % 2 + 1)).unwrap();
            let a = enumerate_groves(&net);
            let b = enumerate_groves_by_subsets(&net, |_, e| e.conductance.clone()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn isolated_interior_vertex_has_no_groves() {
        let net = Network::unit(3, &[(1, 2)], vec![1, 2]).unwrap();
        assert_eq!(enumerate_groves(&net).total(), int(0));
    }
}
