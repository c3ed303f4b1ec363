use std::fmt;

use super::Partition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }
}

/// A coloring of nodes `1..=n` in which each color occupies one circular arc
/// (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorSpec {
    colors: Vec<Color>,
}

impl ColorSpec {
    pub fn new(colors: Vec<Color>) -> Result<Self> {
        let n = colors.len();
        for c in Color::ALL {
            // Count arcs of this color: positions where it starts.
            let starts = (0..n).filter(|&i| colors[i] == c && colors[(i + n - 1) % n] != c).count();
            let present = colors.contains(&c);
            if starts > 1 || (present && starts == 0 && colors.iter().any(|&x| x != c)) {
                return Err(Error::pre(format!("color {} is not a contiguous arc", c.letter())));
            }
        }
        Ok(ColorSpec { colors })
    }

    /// Colors arcs of `n` nodes: nodes `cuts[0]+1..=cuts[1]` red, then green up
    /// to `cuts[2]`, then blue back around to `cuts[0]`. Cuts are gap positions
    /// in `0..n` (gap `k` lies after node `k`) taken in cyclic order.
    pub fn from_cuts(n: usize, cuts: [usize; 3]) -> Result<Self> {
        let mut colors = vec![Color::Blue; n];
        let span = |from: usize, to: usize| (to + n - from) % n;
        let (r, g) = (span(cuts[0], cuts[1]), span(cuts[1], cuts[2]));
        if r + g > n {
            return Err(Error::pre("cuts are not in cyclic order"));
        }
        for k in 0..r {
            colors[(cuts[0] + k) % n] = Color::Red;
        }
        for k in 0..g {
            colors[(cuts[1] + k) % n] = Color::Green;
        }
        Self::new(colors)
    }

    /// Parses `R=a-b,G=c-d,B=e-f`; ranges are circular (`B=7-2` wraps) and a
    /// color may be omitted when its arc is empty.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut colors: Vec<Option<Color>> = vec![None; n];
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (name, range) = item.split_once('=').ok_or_else(|| Error::parse(format!("bad color item `{item}`")))?;
            let color = match name.trim() {
                "R" | "r" => Color::Red,
                "G" | "g" => Color::Green,
                "B" | "b" => Color::Blue,
                other => return Err(Error::parse(format!("unknown color `{other}`"))),
            };
            let (lo, hi) = match range.split_once('-') {
                Some((a, b)) => (a, b),
                None => (range, range),
            };
            let node = |t: &str| -> Result<usize> {
                let v: usize = t.trim().parse().map_err(|_| Error::parse(format!("bad node `{t}`")))?;
                if v == 0 || v > n {
                    return Err(Error::parse(format!("node {v} out of range 1..={n}")));
                }
                Ok(v)
            };
            let (lo, hi) = (node(lo)?, node(hi)?);
            let mut x = lo;
            loop {
                if colors[x - 1].replace(color).is_some() {
                    return Err(Error::parse(format!("node {x} colored twice")));
                }
                if x == hi {
                    break;
                }
                x = x % n + 1;
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::parse(format!("node {} has no color", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(colors)
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Color of node `i` (1-based).
    pub fn color(&self, i: usize) -> Color {
        self.colors[i - 1]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// The nonempty arcs in circular order, each listed from its first node.
    fn arcs(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let Some(start) = (0..n).find(|&i| self.colors[i] != self.colors[(i + n - 1) % n]) else {
            return if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        };
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        for k in 0..n {
            let i = (start + k) % n;
            if k == 0 || self.colors[i] != self.colors[(i + n - 1) % n] {
                arcs.push(Vec::new());
            }
            arcs.last_mut().unwrap().push(i + 1);
        }
        arcs
    }

    /// The minimal noncrossing partition with no monochromatic part.
    ///
    /// Across each color change, the `w` nodes nearest the change on either
    /// side are paired in nested fashion, where `w` is half the excess of the
    /// two adjacent arcs over the opposite one. With an odd total, one node is
    /// left over in each arc and these form the tripleton.
    pub fn tripartite_partition(&self) -> Result<Partition> {
        let n = self.n();
        let mut arcs = self.arcs();
        while arcs.len() < 3 {
            arcs.push(Vec::new());
        }
        let size = |k: usize| arcs[k % 3].len() as i64;
        let odd = n % 2;
        let mut parts = Vec::new();
        let mut used = [0usize; 3];
        let excess: Vec<i64> = (0..3).map(|k| size(k) + size(k + 1) - size(k + 2) - odd as i64).collect();
        if excess.iter().any(|&e| e < 0) {
            return Err(Error::pre(format!(
                "arc sizes {} {} {} violate the triangle inequality",
                size(0),
                size(1),
                size(2)
            )));
        }
        for k in 0..3 {
            let w = (excess[k] / 2) as usize;
            let (left, right) = (&arcs[k], &arcs[(k + 1) % 3]);
            for i in 0..w {
                parts.push(vec![left[left.len() - 1 - i], right[i]]);
            }
            used[(k + 1) % 3] = w;
        }
        if odd == 1 {
            // The untouched node of each arc.
            let tri: Vec<usize> = (0..3).map(|k| arcs[k][used[k]]).collect();
            parts.push(tri);
        }
        Partition::new(n, parts)
    }

    /// Every coloring by three (possibly empty) arcs whose tripartite
    /// partition is `p`, red arc first, in lexicographic order of cuts.
    pub fn colorings_for(p: &Partition) -> Vec<ColorSpec> {
        let n = p.n();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for a in 0..n {
            for r in 0..=n {
                for g in 0..=n - r {
                    let colors: Vec<Color> = (0..n)
                        .map(|i| {
                            let off = (i + n - a) % n;
                            if off < r {
                                Color::Red
                            } else if off < r + g {
                                Color::Green
                            } else {
                                Color::Blue
                            }
                        })
                        .collect();
                    if let Ok(c) = ColorSpec::new(colors) {
                        if c.tripartite_partition().as_ref() == Ok(p) && !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ColorSpec {
    /// Inverse of [`ColorSpec::parse`]; empty colors are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        for arc in self.arcs() {
            let c = self.color(arc[0]);
            items.push(format!("{}={}-{}", c.letter(), arc[0], arc[arc.len() - 1]));
        }
        items.sort_by_key(|s| "RGB".find(&s[..1]));
        f.write_str(&items.join(","))
    }
}
