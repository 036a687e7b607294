//! Finite bounded lattices with precomputed order, meet and join tables.

mod catalog;
mod standard;

pub use catalog::labelled_lattices;
pub use standard::{make_standard, Standard};

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::{low_mask, BitIter, ElemSet, Relation, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Default cap on the number of lattice elements accepted by constructors.
pub const DEFAULT_MAX_ELEMENTS: usize = MAX_ELEMENTS;

/// A finite bounded lattice.
///
/// Elements are the integers `0..size`, numbered along a linear extension of
/// the order, so `0` is the bottom and `size - 1` the top.
#[derive(Clone)]
pub struct Lattice {
    name: String,
    shape: Option<Standard>,
    labels: Vec<String>,
    up: Vec<u64>,
    down: Vec<u64>,
    meet: Vec<u8>,
    join: Vec<u8>,
    covers: Relation,
}

/// A covering diamond `bottom < left, right < top` in which all four
/// relations are covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diamond {
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub top: usize,
}

impl Diamond {
    pub fn edges(&self) -> [(usize, usize); 4] {
        [
            (self.bottom, self.left),
            (self.bottom, self.right),
            (self.left, self.top),
            (self.right, self.top),
        ]
    }
}

/// Builds a lattice from labels and order pairs given by label.
///
/// The pairs may be covers or any generating set of the order; the
/// reflexive-transitive closure is taken.
pub fn build_lattice<S: AsRef<str>>(labels: &[S], leq_pairs: &[(S, S)]) -> Result<Lattice> {
    build_lattice_with_cap(labels, leq_pairs, DEFAULT_MAX_ELEMENTS)
}

pub fn build_lattice_with_cap<S: AsRef<str>>(labels: &[S], leq_pairs: &[(S, S)], cap: usize) -> Result<Lattice> {
    let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    let lookup = |name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    };
    let pairs = leq_pairs
        .iter()
        .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
        .collect::<Result<Vec<_>>>()?;
    Lattice::from_indexed(labels, &pairs, cap)
}

impl Lattice {
    /// Builds a lattice from labels and order pairs given by position in
    /// `labels`. Elements are renumbered along a linear extension.
    pub fn from_indexed(labels: Vec<String>, pairs: &[(usize, usize)], cap: usize) -> Result<Lattice> {
        let n = labels.len();
        let cap = cap.min(MAX_ELEMENTS);
        if n > cap {
            return Err(Error::TooLarge { size: n, cap });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        if n == 0 {
            return Err(Error::NoBoundedness);
        }

        // up[x] = {y : x <= y}, closed transitively.
        let mut up: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
            up[a] |= 1 << b;
        }
        for k in 0..n {
            for x in 0..n {
                if up[x] >> k & 1 == 1 {
                    up[x] |= up[k];
                }
            }
        }
        for x in 0..n {
            for y in BitIter(up[x] & !(1 << x)) {
                if up[y] >> x & 1 == 1 {
                    return Err(Error::NotAPoset(labels[x].clone(), labels[y].clone()));
                }
            }
        }

        // Kahn's algorithm, always taking the lowest available input index.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u64;
        while order.len() < n {
            let next = (0..n)
                .find(|&x| {
                    placed >> x & 1 == 0 && {
                        let below = (0..n).filter(|&y| y != x && up[y] >> x & 1 == 1);
                        below.into_iter().all(|y| placed >> y & 1 == 1)
                    }
                })
                .expect("a finite poset always has a minimal unplaced element");
            placed |= 1 << next;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let new_labels: Vec<String> = order.iter().map(|&old| labels[old].clone()).collect();
        let mut new_up = vec![0u64; n];
        for (old, &row) in up.iter().enumerate() {
            for y in BitIter(row) {
                new_up[position[old]] |= 1 << position[y];
            }
        }
        Lattice::from_order(new_labels, new_up)
    }

    /// Builds the tables from an order given as up-set rows whose indices
    /// already form a linear extension.
    pub(crate) fn from_order(labels: Vec<String>, up: Vec<u64>) -> Result<Lattice> {
        let n = labels.len();
        let mut down = vec![0u64; n];
        for (x, &row) in up.iter().enumerate() {
            for y in BitIter(row) {
                down[y] |= 1 << x;
            }
        }
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = down[x] & down[y];
                let glb = BitIter(lower).find(|&g| lower & !down[g] == 0);
                let upper = up[x] & up[y];
                let lub = BitIter(upper).find(|&l| upper & !up[l] == 0);
                let (Some(glb), Some(lub)) = (glb, lub) else {
                    return Err(Error::NotALattice {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        bound: if glb.is_none() { "meet" } else { "join" },
                    });
                };
                meet[x * n + y] = glb as u8;
                meet[y * n + x] = glb as u8;
                join[x * n + y] = lub as u8;
                join[y * n + x] = lub as u8;
            }
        }
        if up[0] != low_mask(n) || down[n - 1] != low_mask(n) {
            return Err(Error::NoBoundedness);
        }
        let mut covers = Relation::empty(n);
        for (x, &row) in up.iter().enumerate() {
            let above = row & !(1 << x);
            for y in BitIter(above) {
                // y covers x when nothing strictly above x is strictly below y.
                if above & down[y] & !(1 << y) == 0 {
                    covers.insert(x, y);
                }
            }
        }
        Ok(Lattice {
            name: "custom".to_string(),
            shape: None,
            labels,
            up,
            down,
            meet,
            join,
            covers,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_shape(mut self, shape: Standard) -> Self {
        self.name = shape.to_string();
        self.shape = Some(shape);
        self
    }

    /// Human-readable descriptor such as `grid(1,1)`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The standard family this lattice was built from, if any.
    pub fn shape(&self) -> Option<Standard> {
        self.shape
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.size() - 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] >> y & 1 == 1
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y] as usize
    }

    /// `{y : x <= y}`.
    pub fn up_set(&self, x: usize) -> ElemSet {
        ElemSet(self.up[x])
    }

    /// `{y : y <= x}`.
    pub fn down_set(&self, x: usize) -> ElemSet {
        ElemSet(self.down[x])
    }

    /// The strict order `<` as a relation.
    pub fn strict_order(&self) -> Relation {
        Relation::from_rows(self.up.iter().enumerate().map(|(x, &row)| row & !(1 << x)).collect())
    }

    /// Meet of a nonempty set; the top for the empty set.
    pub fn meet_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Join of a nonempty set; the bottom for the empty set.
    pub fn join_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// All pairs `x < y` with nothing strictly between.
    pub fn covering_relations(&self) -> &Relation {
        &self.covers
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.covers.contains(lower, upper)
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.size()];
        for (x, y) in self.covers.pairs() {
            // Covers are visited in index order, which is a linear extension.
            rank[y] = rank[y].max(rank[x] + 1);
        }
        rank
    }

    /// The modular law `a <= b => a ∨ (x ∧ b) = (a ∨ x) ∧ b`, over all triples.
    pub fn is_modular(&self) -> bool {
        self.elements().all(|a| {
            self.up_set(a).iter().all(|b| {
                self.elements()
                    .all(|x| self.join(a, self.meet(x, b)) == self.meet(self.join(a, x), b))
            })
        })
    }

    /// The diamond isomorphism formulation: for all `x, y`, the maps
    /// `z ↦ z ∨ y` and `z ↦ z ∧ y` are inverse between `[x ∧ y, x]` and
    /// `[y, x ∨ y]`.
    pub fn has_diamond_isomorphisms(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                let lo = self.meet(x, y);
                let hi = self.join(x, y);
                let lower = self.up_set(lo).0 & self.down_set(x).0;
                let upper = self.up_set(y).0 & self.down_set(hi).0;
                BitIter(lower).all(|z| self.meet(self.join(z, y), x) == z)
                    && BitIter(upper).all(|w| self.join(self.meet(w, x), y) == w)
            })
        })
    }

    /// All covering diamonds, as `(x ∧ y, x, y, x ∨ y)` with `x < y` by index.
    pub fn covering_diamonds(&self) -> Vec<Diamond> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in x + 1..self.size() {
                if self.comparable(x, y) {
                    continue;
                }
                let (m, j) = (self.meet(x, y), self.join(x, y));
                if self.covers(m, x) && self.covers(m, y) && self.covers(x, j) && self.covers(y, j) {
                    out.push(Diamond {
                        bottom: m,
                        left: x,
                        right: y,
                        top: j,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// The opposite lattice. Element `x` of `self` becomes `size - 1 - x`.
    pub fn dual(&self) -> Lattice {
        let n = self.size();
        let labels: Vec<String> = self.labels.iter().rev().cloned().collect();
        let up: Vec<u64> = (0..n)
            .map(|x| {
                let orig = n - 1 - x;
                BitIter(self.down[orig]).fold(0u64, |acc, y| acc | 1 << (n - 1 - y))
            })
            .collect();
        let name = match self.name.strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("dual({})", self.name),
        };
        Lattice::from_order(labels, up)
            .expect("the dual of a lattice is a lattice")
            .with_name(name)
    }

    /// Identification of elements with those of the dual lattice.
    #[inline]
    pub fn op(&self, x: usize) -> usize {
        self.size() - 1 - x
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> = self
            .covers
            .pairs()
            .map(|(x, y)| (self.label(x), self.label(y)))
            .collect();
        f.debug_struct("Lattice")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}
