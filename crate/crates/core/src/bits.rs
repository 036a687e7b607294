//! Bitset representations for element sets and binary relations.
//!
//! A lattice has at most 64 elements, so an element set is a single `u64`
//! and a relation is one `u64` row per element: bit `y` of row `x` records
//! the pair `(x, y)`. Relations store strict pairs only.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of elements any lattice may have.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(pub u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn full(n: usize) -> Self {
        ElemSet(low_mask(n))
    }

    pub fn singleton(x: usize) -> Self {
        ElemSet(1 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1 << x);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ElemSet::EMPTY;
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(bit)
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of strict pairs over `0..n`, one row per source element.
///
/// The derived order is the canonical one used for every enumeration: a
/// relation is read as a binary number whose bit `64 * x + y` is the pair
/// `(x, y)`, so later sources (and within a row, later targets) are more
/// significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![0; n] }
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        Relation { rows }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut rel = Relation::empty(n);
        for (x, y) in pairs {
            rel.insert(x, y);
        }
        rel
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> ElemSet {
        ElemSet(self.rows[x])
    }

    /// Membership of a strict pair; `(x, x)` is never stored.
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    /// Membership with the implied reflexive pairs.
    pub fn contains_refl(&self, x: usize, y: usize) -> bool {
        x == y || self.contains(x, y)
    }

    /// Inserts a pair, ignoring the diagonal. Returns whether it was new.
    pub fn insert(&mut self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let bit = 1u64 << y;
        let fresh = self.rows[x] & bit == 0;
        self.rows[x] |= bit;
        fresh
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1u64 << y);
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect(),
        }
    }

    /// Pairs in ascending canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &row)| BitIter(row).map(move |y| (x, y)))
    }

    /// Sources `x` with `(x, y)` in the relation.
    pub fn column(&self, y: usize) -> ElemSet {
        let mut set = ElemSet::EMPTY;
        for (x, &row) in self.rows.iter().enumerate() {
            if row >> y & 1 == 1 {
                set.insert(x);
            }
        }
        set
    }

    /// The opposite relation on the reversed index set `x -> n - 1 - x`.
    pub fn opposite(&self) -> Relation {
        let n = self.rows.len();
        Relation::from_pairs(n, self.pairs().map(|(x, y)| (n - 1 - y, n - 1 - x)))
    }
}

impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows
            .len()
            .cmp(&other.rows.len())
            .then_with(|| self.rows.iter().rev().cmp(other.rows.iter().rev()))
    }
}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
