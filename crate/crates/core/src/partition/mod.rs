//! Set partitions of circularly ordered nodes and the algebra acting on them.

mod color;
mod forest;
mod project;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use color::{Color, ColorSpec};
pub use forest::{grove_prob_generic, l_tau_polynomial, GENERIC_NODE_BOUND};
pub use project::{project, project_by, projection_coefficient, Projector};

/// A partition of the nodes `1..=n`, kept in canonical form: elements sorted
/// within parts, parts sorted by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &x in parts.iter().flatten() {
            if x == 0 || x > n {
                return Err(Error::parse(format!("node {x} out of range 1..={n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::parse(format!("node {x} appears twice")));
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::parse(format!("node {x} is missing")));
        }
        Ok(Self::canonical(n, parts))
    }

    fn canonical(n: usize, mut parts: Vec<Vec<usize>>) -> Self {
        parts.retain(|p| !p.is_empty());
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_unstable();
        Partition { n, parts }
    }

    /// `1|2|...|n`.
    pub fn singletons(n: usize) -> Self {
        Partition { n, parts: (1..=n).map(|i| vec![i]).collect() }
    }

    /// `12...n`.
    pub fn whole(n: usize) -> Self {
        Partition { n, parts: if n == 0 { vec![] } else { vec![(1..=n).collect()] } }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Part index of each node, indexed by node (slot 0 unused).
    pub fn labels(&self) -> Vec<usize> {
        let mut lab = vec![usize::MAX; self.n + 1];
        for (k, p) in self.parts.iter().enumerate() {
            for &x in p {
                lab[x] = k;
            }
        }
        lab
    }

    pub fn part_of(&self, x: usize) -> Option<&[usize]> {
        self.parts.iter().find(|p| p.contains(&x)).map(Vec::as_slice)
    }

    /// True iff no `a<b<c<d` has `a,c` in one part and `b,d` in another.
    pub fn is_planar(&self) -> bool {
        let lab = self.labels();
        // A partition is noncrossing iff the parts nest like brackets when
        // scanned left to right.
        let mut last = vec![0usize; self.parts.len()];
        for p in &self.parts {
            last[lab[p[0]]] = *p.last().unwrap();
        }
        let mut stack: Vec<usize> = Vec::new();
        for (x, &k) in lab.iter().enumerate().skip(1) {
            while let Some(&top) = stack.last() {
                if top == k || last[top] > x {
                    break;
                }
                stack.pop();
            }
            match stack.last() {
                Some(&top) if top == k => {}
                _ => {
                    if self.parts[k][0] != x {
                        return false;
                    }
                    stack.push(k);
                }
            }
        }
        true
    }

    /// The same partition with every node `i` renamed to `i + shift (mod n)`.
    pub fn rotate(&self, shift: usize) -> Self {
        let n = self.n;
        let parts = self.parts.iter().map(|p| p.iter().map(|&x| (x - 1 + shift) % n + 1).collect()).collect();
        Self::canonical(n, parts)
    }

    /// Removes the listed singleton nodes and renumbers the rest in order.
    pub fn drop_singletons(&self, drop: &[usize]) -> Result<Self> {
        for &x in drop {
            if self.part_of(x).is_none_or(|p| p.len() != 1) {
                return Err(Error::pre(format!("node {x} is not a singleton")));
            }
        }
        let keep: Vec<usize> = (1..=self.n).filter(|x| !drop.contains(x)).collect();
        let mut new = vec![0; self.n + 1];
        for (i, &x) in keep.iter().enumerate() {
            new[x] = i + 1;
        }
        let parts = self
            .parts
            .iter()
            .filter(|p| !(p.len() == 1 && drop.contains(&p[0])))
            .map(|p| p.iter().map(|&x| new[x]).collect())
            .collect();
        Ok(Self::canonical(keep.len(), parts))
    }

    /// Every set partition of `1..=n`, in restricted-growth order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        fn rec(i: usize, n: usize, parts: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
            if i > n {
                out.push(Partition::canonical(n, parts.clone()));
                return;
            }
            for k in 0..parts.len() {
                parts[k].push(i);
                rec(i + 1, n, parts, out);
                parts[k].pop();
            }
            parts.push(vec![i]);
            rec(i + 1, n, parts, out);
            parts.pop();
        }
        rec(1, n, &mut parts, &mut out);
        out
    }

    pub fn all_planar(n: usize) -> Vec<Partition> {
        Self::all(n).into_iter().filter(Partition::is_planar).collect()
    }

    /// Kreweras complement on the dual nodes: element `i` of the result stands
    /// for the dual node between `i` and `i+1`.
    pub fn kreweras_dual(&self) -> Result<Partition> {
        if !self.is_planar() {
            return Err(Error::pre(format!("dual of non-planar partition {self}")));
        }
        let n = self.n;
        // pi maps each element to the next one of its part, cyclically.
        let mut pi_inv = vec![0; n + 1];
        for p in &self.parts {
            for k in 0..p.len() {
                pi_inv[p[(k + 1) % p.len()]] = p[k];
            }
        }
        let next = |i: usize| pi_inv[i % n + 1];
        let mut seen = vec![false; n + 1];
        let mut parts = Vec::new();
        for s in 1..=n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = next(x);
            }
            parts.push(cyc);
        }
        Ok(Self::canonical(n, parts))
    }
}

/// `⟨t, s⟩_t`: one iff the part counts sum to `n+1` and the union of the two
/// partitions connects everything.
pub fn inner_product_t(t: &Partition, s: &Partition) -> Result<u8> {
    if t.n != s.n {
        return Err(Error::pre(format!("node counts differ: {} vs {}", t.n, s.n)));
    }
    if t.num_parts() + s.num_parts() != t.n + 1 {
        return Ok(0);
    }
    let mut parent: Vec<usize> = (0..=t.n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut classes = t.n;
    for part in t.parts.iter().chain(&s.parts) {
        for &x in &part[1..] {
            let (a, b) = (find(&mut parent, part[0]), find(&mut parent, x));
            if a != b {
                parent[a] = b;
                classes -= 1;
            }
        }
    }
    Ok(u8::from(classes <= 1))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n >= 10 { "," } else { "" };
        let text: Vec<String> = self
            .parts
            .iter()
            .map(|p| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&text.join("|"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `1|278|345|6`, or `3,9,15|1|2|...` when labels exceed 9. The
    /// node count is the number of elements.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition { n: 0, parts: vec![] });
        }
        let commas = s.contains(',');
        let mut parts = Vec::new();
        for chunk in s.split('|') {
            let chunk = chunk.trim();
            let part: Vec<usize> = if commas {
                chunk
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse(format!("bad node `{t}` in `{s}`"))))
                    .collect::<Result<_>>()?
            } else {
                chunk
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::parse(format!("bad node `{c}` in `{s}`"))))
                    .collect::<Result<_>>()?
            };
            if part.is_empty() {
                return Err(Error::parse(format!("empty part in `{s}`")));
            }
            parts.push(part);
        }
        let n = parts.iter().map(Vec::len).sum();
        Partition::new(n, parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer combination of partitions with no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionSum {
    terms: BTreeMap<Partition, BigInt>,
}

impl PartitionSum {
    pub fn single(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, BigInt::one());
        PartitionSum { terms }
    }

    pub fn add_term(&mut self, p: Partition, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PartitionSum, k: &BigInt) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c * k);
        }
    }

    pub fn coefficient(&self, p: &Partition) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, partition)` pairs in canonical partition order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms.iter().map(|(p, c)| (c.to_string(), p.to_string())).collect()
    }
}

/// Terms in canonical partition order, e.g. `1|234 - 12|34 + 134|2`.
impl fmt::Display for PartitionSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
