//! Orientation combinatorics of a type-A quiver.
//!
//! Vertices are numbered `1..=n` from left to right. Edge `e` joins vertices
//! `e` and `e + 1`; a `Right` edge points `e → e+1`, a `Left` edge points
//! `e+1 → e`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
}

impl Orientation {
    pub fn letter(self) -> char {
        match self {
            Orientation::Left => 'L',
            Orientation::Right => 'R',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverA {
    arrows: Vec<Orientation>,
}

/// `[a, b]` with `1 <= a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || a >= b {
            return Err(Error::InvalidInterval(a, b));
        }
        Ok(Interval { a, b })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A block position `([x],[y])`: `x` labels a block row, `y` a block column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GridPosition {
    pub x: usize,
    pub y: usize,
}

impl fmt::Display for GridPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{}],[{}])", self.x, self.y)
    }
}

/// A totally ordered list of distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSequence {
    order: Vec<usize>,
}

impl VertexSequence {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut s = order.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Mismatch(format!("repeated vertex in {order:?}")));
        }
        Ok(VertexSequence { order })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }
    pub fn len(&self) -> usize {
        self.order.len()
    }
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied()
    }

    pub fn position(&self, x: usize) -> Result<usize> {
        self.order
            .iter()
            .position(|&v| v == x)
            .ok_or(Error::VertexNotInSequence(x))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.order.contains(&x)
    }

    /// The element before `x` (N on S₁, W on S₂).
    pub fn prev(&self, x: usize) -> Result<usize> {
        let k = self.position(x)?;
        if k == 0 {
            return Err(Error::Boundary { vertex: x, direction: "previous" });
        }
        Ok(self.order[k - 1])
    }

    /// The element after `x` (S on S₁, E on S₂).
    pub fn next(&self, x: usize) -> Result<usize> {
        let k = self.position(x)?;
        self.order
            .get(k + 1)
            .copied()
            .ok_or(Error::Boundary { vertex: x, direction: "next" })
    }

    /// `x ≺ y`.
    pub fn precedes(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.position(x)? < self.position(y)?)
    }
}

impl fmt::Display for VertexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Maximal directed runs; each path lists its vertices from source to target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalPaths {
    pub right: Vec<VertexSequence>,
    pub left: Vec<VertexSequence>,
}

impl FromStr for QuiverA {
    type Err = Error;

    /// Parses an orientation word such as `RRLLRL`. Commas and spaces are
    /// ignored; the empty word is the single-vertex quiver.
    fn from_str(word: &str) -> Result<Self> {
        let arrows = word
            .chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c.to_ascii_uppercase() {
                'L' => Ok(Orientation::Left),
                'R' => Ok(Orientation::Right),
                other => Err(Error::InvalidQuiver(format!("unexpected letter {other:?} in {word:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QuiverA { arrows })
    }
}

impl fmt::Display for QuiverA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

impl QuiverA {
    pub fn new(arrows: Vec<Orientation>) -> Self {
        QuiverA { arrows }
    }

    /// The equioriented quiver `1 → 2 → … → n`.
    pub fn equioriented(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        Ok(QuiverA { arrows: vec![Orientation::Right; n - 1] })
    }

    pub fn n(&self) -> usize {
        self.arrows.len() + 1
    }

    pub fn arrows(&self) -> &[Orientation] {
        &self.arrows
    }

    pub fn word(&self) -> String {
        self.arrows.iter().map(|o| o.letter()).collect()
    }

    /// Orientation of edge `e` (between `e` and `e + 1`).
    pub fn arrow(&self, e: usize) -> Orientation {
        assert!(e >= 1 && e < self.n(), "edge {e} outside 1..{}", self.n());
        self.arrows[e - 1]
    }

    /// Source and target vertex of edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        match self.arrow(e) {
            Orientation::Right => (e, e + 1),
            Orientation::Left => (e + 1, e),
        }
    }

    /// Conventional arrow name: `A_i` for the i-th left arrow, `B_i` for the
    /// i-th right arrow, both counted from the left.
    pub fn arrow_label(&self, e: usize) -> String {
        let o = self.arrow(e);
        let i = self.arrows[..e].iter().filter(|&&a| a == o).count();
        match o {
            Orientation::Left => format!("A{i}"),
            Orientation::Right => format!("B{i}"),
        }
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n() {
            return Err(Error::OutOfRange(format!("vertex {x} outside 1..={}", self.n())));
        }
        Ok(())
    }

    pub fn check_interval(&self, iv: Interval) -> Result<()> {
        if iv.a == 0 || iv.a >= iv.b || iv.b > self.n() {
            return Err(Error::InvalidInterval(iv.a, iv.b));
        }
        Ok(())
    }

    /// All intervals `[a, b]`, `a < b`, sorted by `(a, b)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.n();
        let mut v = Vec::with_capacity(n * (n - 1) / 2);
        for a in 1..=n {
            for b in a + 1..=n {
                v.push(Interval { a, b });
            }
        }
        v
    }

    /// Whether `x` is a source of the cut subquiver on `[a, b]`.
    pub fn is_source_in(&self, x: usize, a: usize, b: usize) -> bool {
        let out_left = x == a || self.arrow(x - 1) == Orientation::Left;
        let out_right = x == b || self.arrow(x) == Orientation::Right;
        out_left && out_right
    }

    /// Whether `x` is a sink of the cut subquiver on `[a, b]`.
    pub fn is_sink_in(&self, x: usize, a: usize, b: usize) -> bool {
        let in_left = x == a || self.arrow(x - 1) == Orientation::Right;
        let in_right = x == b || self.arrow(x) == Orientation::Left;
        in_left && in_right
    }

    pub fn is_critical(&self, x: usize) -> bool {
        let n = self.n();
        self.is_source_in(x, 1, n) || self.is_sink_in(x, 1, n)
    }

    /// Critical points `s₁ < s₂ < …` of Q.
    pub fn critical_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&x| self.is_critical(x)).collect()
    }

    /// Critical points of the cut subquiver on `[a, b]`; always contains `a`
    /// and `b`.
    pub fn critical_points_in(&self, a: usize, b: usize) -> Vec<usize> {
        (a..=b)
            .filter(|&x| self.is_source_in(x, a, b) || self.is_sink_in(x, a, b))
            .collect()
    }

    /// Sources and sinks of `Q_[a,b]`, each in descending vertex order.
    pub fn interval_sources_sinks(&self, iv: Interval) -> (Vec<usize>, Vec<usize>) {
        let sou = (iv.a..=iv.b).rev().filter(|&x| self.is_source_in(x, iv.a, iv.b)).collect();
        let sin = (iv.a..=iv.b).rev().filter(|&x| self.is_sink_in(x, iv.a, iv.b)).collect();
        (sou, sin)
    }

    /// Whether every edge between `y < x` points right, i.e. there is a
    /// directed path `y → x`.
    pub fn has_right_path(&self, y: usize, x: usize) -> bool {
        y < x && (y..x).all(|e| self.arrow(e) == Orientation::Right)
    }

    /// Whether every edge between `x < y` points left, i.e. there is a
    /// directed path `y → x`.
    pub fn has_left_path(&self, y: usize, x: usize) -> bool {
        x < y && (x..y).all(|e| self.arrow(e) == Orientation::Left)
    }

    pub fn maximal_paths(&self) -> MaximalPaths {
        let mut right = Vec::new();
        let mut left = Vec::new();
        let mut e = 1;
        while e < self.n() {
            let o = self.arrow(e);
            let mut f = e;
            while f + 1 < self.n() && self.arrow(f + 1) == o {
                f += 1;
            }
            let verts: Vec<usize> = match o {
                Orientation::Right => (e..=f + 1).collect(),
                Orientation::Left => (e..=f + 1).rev().collect(),
            };
            let seq = VertexSequence { order: verts };
            match o {
                Orientation::Right => right.push(seq),
                Orientation::Left => left.push(seq),
            }
            e = f + 1;
        }
        MaximalPaths { right, left }
    }

    /// Row order S₁: the right paths without their targets, then `n`, then
    /// the left paths (last to first) without their sources.
    pub fn seq_s1(&self) -> VertexSequence {
        let paths = self.maximal_paths();
        let mut order = Vec::with_capacity(self.n());
        for r in &paths.right {
            order.extend_from_slice(&r.order[..r.len() - 1]);
        }
        order.push(self.n());
        for l in paths.left.iter().rev() {
            order.extend_from_slice(&l.order[1..]);
        }
        VertexSequence { order }
    }

    /// Column order S₂: the left paths (last to first) without their
    /// targets, then `1`, then the right paths without their sources.
    pub fn seq_s2(&self) -> VertexSequence {
        let paths = self.maximal_paths();
        let mut order = Vec::with_capacity(self.n());
        for l in paths.left.iter().rev() {
            order.extend_from_slice(&l.order[..l.len() - 1]);
        }
        order.push(1);
        for r in &paths.right {
            order.extend_from_slice(&r.order[1..]);
        }
        VertexSequence { order }
    }

    /// `x^L`: the previous critical point when `x` is critical (`1^L = 1`),
    /// otherwise `x` itself.
    pub fn x_left(&self, x: usize) -> usize {
        if !self.is_critical(x) {
            return x;
        }
        (1..x).rev().find(|&v| self.is_critical(v)).unwrap_or(1)
    }

    /// `x^R`: the next critical point when `x` is critical (`n^R = n`),
    /// otherwise `x` itself.
    pub fn x_right(&self, x: usize) -> usize {
        if !self.is_critical(x) {
            return x;
        }
        (x + 1..=self.n()).find(|&v| self.is_critical(v)).unwrap_or(self.n())
    }

    /// λ(x) for `x < n`: `x^L` if `x` is a source of `Q_[x,n]`, else the
    /// predecessor of `x^L` in S₂.
    pub fn lambda(&self, x: usize) -> Result<usize> {
        self.check_vertex(x)?;
        if x == self.n() {
            return Err(Error::Boundary { vertex: x, direction: "lambda at n" });
        }
        let xl = self.x_left(x);
        if self.arrow(x) == Orientation::Right {
            Ok(xl)
        } else {
            self.seq_s2().prev(xl)
        }
    }

    /// μ(x) for `x > 1`: `x^R` if `x` is a sink of `Q_[1,x]`, else the
    /// successor of `x^R` in S₁.
    pub fn mu(&self, x: usize) -> Result<usize> {
        self.check_vertex(x)?;
        if x == 1 {
            return Err(Error::Boundary { vertex: x, direction: "mu at 1" });
        }
        let xr = self.x_right(x);
        if self.arrow(x - 1) == Orientation::Right {
            Ok(xr)
        } else {
            self.seq_s1().next(xr)
        }
    }

    /// The block position `([μ(b)],[λ(a)])` paired with `[a, b]`.
    pub fn grid_position(&self, iv: Interval) -> Result<GridPosition> {
        self.check_interval(iv)?;
        Ok(GridPosition { x: self.mu(iv.b)?, y: self.lambda(iv.a)? })
    }

    /// The injective map from intervals to block positions.
    pub fn interval_grid_map(&self) -> Result<BTreeMap<Interval, GridPosition>> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for iv in self.intervals() {
            let pos = self.grid_position(iv)?;
            if !seen.insert(pos) {
                return Err(Error::Inconsistent(format!("{iv} collides at {pos}")));
            }
            map.insert(iv, pos);
        }
        Ok(map)
    }

    /// Block positions outside the image of the interval map. There are
    /// exactly `n(n+1)/2` of them.
    pub fn constant_positions(&self) -> Result<BTreeSet<GridPosition>> {
        let image: BTreeSet<GridPosition> = self.interval_grid_map()?.into_values().collect();
        let n = self.n();
        let out: BTreeSet<GridPosition> = (1..=n)
            .flat_map(|x| (1..=n).map(move |y| GridPosition { x, y }))
            .filter(|p| !image.contains(p))
            .collect();
        if out.len() != n * (n + 1) / 2 {
            return Err(Error::Inconsistent(format!(
                "{} constant positions, expected {}",
                out.len(),
                n * (n + 1) / 2
            )));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> QuiverA {
        "RRLLRL".parse().unwrap()
    }

    #[test]
    fn critical_points_of_example() {
        assert_eq!(example().critical_points(), vec![1, 3, 5, 6, 7]);
        assert_eq!(QuiverA::equioriented(5).unwrap().critical_points(), vec![1, 5]);
        assert_eq!(QuiverA::equioriented(1).unwrap().critical_points(), vec![1]);
    }

    #[test]
    fn maximal_paths_of_example() {
        let p = example().maximal_paths();
        let r: Vec<&[usize]> = p.right.iter().map(|s| s.as_slice()).collect();
        let l: Vec<&[usize]> = p.left.iter().map(|s| s.as_slice()).collect();
        assert_eq!(r, vec![&[1, 2, 3][..], &[5, 6][..]]);
        assert_eq!(l, vec![&[5, 4, 3][..], &[7, 6][..]]);
        let q: QuiverA = "L".parse().unwrap();
        let p = q.maximal_paths();
        assert!(p.right.is_empty());
        assert_eq!(p.left[0].as_slice(), &[2, 1]);
    }

    #[test]
    fn sequences() {
        let q = example();
        assert_eq!(q.seq_s1().as_slice(), &[1, 2, 5, 7, 6, 4, 3]);
        assert_eq!(q.seq_s2().as_slice(), &[7, 5, 4, 1, 2, 3, 6]);
        let e = QuiverA::equioriented(4).unwrap();
        assert_eq!(e.seq_s1().as_slice(), &[1, 2, 3, 4]);
        assert_eq!(e.seq_s2().as_slice(), &[1, 2, 3, 4]);
        let l: QuiverA = "L".parse().unwrap();
        assert_eq!(l.seq_s1().as_slice(), &[2, 1]);
        assert_eq!(l.seq_s2().as_slice(), &[2, 1]);
    }

    #[test]
    fn navigation() {
        let q = example();
        assert_eq!(q.seq_s1().next(4).unwrap(), 3);
        assert_eq!(q.seq_s2().prev(2).unwrap(), 1);
        assert!(matches!(q.seq_s1().prev(1), Err(Error::Boundary { .. })));
        assert_eq!(q.seq_s1().prev(9), Err(Error::VertexNotInSequence(9)));
    }

    #[test]
    fn endpoint_operators() {
        let q = example();
        assert_eq!(q.x_left(2), 2);
        assert_eq!(q.x_right(4), 4);
        assert_eq!((q.x_left(5), q.x_right(5)), (3, 6));
        assert_eq!(q.x_left(1), 1);
        assert_eq!(q.x_right(7), 7);
        let lam: Vec<usize> = (1..7).map(|x| q.lambda(x).unwrap()).collect();
        let mu: Vec<usize> = (2..8).map(|x| q.mu(x).unwrap()).collect();
        assert_eq!(lam, vec![1, 2, 4, 5, 3, 7]);
        assert_eq!(mu, vec![2, 5, 3, 4, 7, 6]);
        assert!(q.lambda(7).is_err());
        assert!(q.mu(1).is_err());
    }

    #[test]
    fn grid_map_examples() {
        let q = example();
        let m = q.interval_grid_map().unwrap();
        assert_eq!(m[&Interval { a: 1, b: 2 }], GridPosition { x: 2, y: 1 });
        assert_eq!(m[&Interval { a: 2, b: 4 }], GridPosition { x: 3, y: 2 });
        assert_eq!(m[&Interval { a: 1, b: 7 }], GridPosition { x: 6, y: 1 });
        assert_eq!(q.constant_positions().unwrap().len(), 28);
        let two: QuiverA = "R".parse().unwrap();
        assert_eq!(two.constant_positions().unwrap().len(), 3);
    }

    #[test]
    fn sources_and_sinks() {
        let q = example();
        let (sou, sin) = q.interval_sources_sinks(Interval { a: 1, b: 7 });
        assert_eq!((sou, sin), (vec![7, 5, 1], vec![6, 3]));
        let (sou, sin) = q.interval_sources_sinks(Interval { a: 2, b: 4 });
        assert_eq!((sou, sin), (vec![4, 2], vec![3]));
        let (sou, sin) = q.interval_sources_sinks(Interval { a: 1, b: 2 });
        assert_eq!((sou, sin), (vec![1], vec![2]));
    }

    #[test]
    fn arrow_labels() {
        let q = example();
        let labels: Vec<String> = (1..7).map(|e| q.arrow_label(e)).collect();
        assert_eq!(labels, ["B1", "B2", "A1", "A2", "B3", "A3"]);
    }
}
