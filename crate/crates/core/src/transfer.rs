//! Transfer systems: partial orders refining the lattice order that are
//! stable under pullback, together with saturation, disklikeness and the
//! saturated-cover correspondence on modular lattices.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{ElemSet, Relation};
use crate::closure_system;
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Default cap on the number of structures an enumeration may produce.
pub const DEFAULT_MAX_STRUCTURES: usize = 1_000_000;

#[derive(Clone)]
pub struct TransferSystem {
    lattice: Arc<Lattice>,
    rel: Relation,
}

/// The first failed transfer-system axiom, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransferViolation {
    /// `x R y` and `y R z` but not `x R z`.
    Transitivity { x: usize, y: usize, z: usize },
    /// `y R z` and `x <= z` but not `(x ∧ y) R x`.
    Pullback { x: usize, y: usize, z: usize },
}

impl fmt::Display for TransferViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferViolation::Transitivity { x, y, z } => {
                write!(f, "transitivity fails: {x} R {y} R {z} but not {x} R {z}")
            }
            TransferViolation::Pullback { x, y, z } => {
                write!(f, "pullback fails: {y} R {z} and {x} <= {z} but not ({x} ∧ {y}) R {x}")
            }
        }
    }
}

pub(crate) fn check_refines(lattice: &Lattice, rel: &Relation) -> Result<()> {
    if rel.size() != lattice.size() {
        return Err(Error::CarrierMismatch);
    }
    match rel.pairs().find(|&(x, y)| !lattice.leq(x, y)) {
        Some((x, y)) => Err(Error::RefinementViolation(x, y)),
        None => Ok(()),
    }
}

/// Checks the transfer-system axioms for `rel` (reflexive pairs implied).
/// Returns `None` when they hold, otherwise the first violation found.
pub fn validate_transfer(lattice: &Lattice, rel: &Relation) -> Result<Option<TransferViolation>> {
    check_refines(lattice, rel)?;
    for (x, y) in rel.pairs() {
        if let Some(z) = rel.row(y).iter().find(|&z| !rel.contains(x, z)) {
            return Ok(Some(TransferViolation::Transitivity { x, y, z }));
        }
    }
    for (y, z) in rel.pairs() {
        for x in lattice.down_set(z).iter() {
            let m = lattice.meet(x, y);
            if !rel.contains_refl(m, x) {
                return Ok(Some(TransferViolation::Pullback { x, y, z }));
            }
        }
    }
    Ok(None)
}

/// Smallest transfer system containing `rel`, or the smallest saturated
/// one when `saturate` is set. `rel` must refine the order.
fn close(lattice: &Lattice, rel: &Relation, saturate: bool) -> Relation {
    let mut r = rel.clone();
    let mut queue: Vec<(usize, usize)> = r.pairs().collect();
    let add = |r: &mut Relation, queue: &mut Vec<(usize, usize)>, x: usize, y: usize| {
        if r.insert(x, y) {
            queue.push((x, y));
        }
    };
    while let Some((a, b)) = queue.pop() {
        for c in r.row(b).iter() {
            add(&mut r, &mut queue, a, c);
        }
        for w in r.column(a).iter() {
            add(&mut r, &mut queue, w, b);
        }
        for x in lattice.down_set(b).iter() {
            add(&mut r, &mut queue, lattice.meet(x, a), x);
        }
        if saturate {
            let row = r.row(a).0;
            for z in ElemSet(row & lattice.up_set(b).0).iter() {
                add(&mut r, &mut queue, b, z);
            }
            for y in ElemSet(row & lattice.down_set(b).0).iter() {
                add(&mut r, &mut queue, y, b);
            }
        }
    }
    r
}

pub(crate) fn close_transfer(lattice: &Lattice, rel: &Relation) -> Relation {
    close(lattice, rel, false)
}

pub(crate) fn close_saturated(lattice: &Lattice, rel: &Relation) -> Relation {
    close(lattice, rel, true)
}

/// The transfer system generated by `seed`.
pub fn generate(lattice: &Arc<Lattice>, seed: &Relation) -> Result<TransferSystem> {
    check_refines(lattice, seed)?;
    Ok(TransferSystem {
        lattice: lattice.clone(),
        rel: close_transfer(lattice, seed),
    })
}

/// The smallest saturated transfer system containing `seed`.
pub fn generate_saturated(lattice: &Arc<Lattice>, seed: &Relation) -> Result<TransferSystem> {
    check_refines(lattice, seed)?;
    Ok(TransferSystem {
        lattice: lattice.clone(),
        rel: close_saturated(lattice, seed),
    })
}

fn enumerate_with(
    lattice: &Arc<Lattice>,
    limit: usize,
    closure: fn(&Lattice, &Relation) -> Relation,
) -> Result<Vec<TransferSystem>> {
    let ground = lattice.strict_order();
    let sets = closure_system::all_closed(
        ground.rows(),
        |s| closure(lattice, &Relation::from_rows(s.to_vec())).rows().to_vec(),
        limit,
    )?;
    Ok(sets
        .into_iter()
        .map(|rows| TransferSystem {
            lattice: lattice.clone(),
            rel: Relation::from_rows(rows),
        })
        .collect())
}

/// Every transfer system on `lattice`, in canonical order.
///
/// Transfer systems are closed under intersection, so they are the closed
/// sets of `generate`; the search walks those closed sets in canonical order
/// and therefore never produces a duplicate.
pub fn enumerate_transfer(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<TransferSystem>> {
    enumerate_with(lattice, limit, close_transfer)
}

/// Every saturated transfer system on `lattice`, in canonical order.
pub fn enumerate_saturated(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<TransferSystem>> {
    enumerate_with(lattice, limit, close_saturated)
}

pub(crate) fn same_carrier(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TransferSystem {
    /// Validates `rel` as a transfer system.
    pub fn new(lattice: Arc<Lattice>, rel: Relation) -> Result<Self> {
        if let Some(v) = validate_transfer(&lattice, &rel)? {
            return Err(Error::NotATransferSystem(v.to_string()));
        }
        Ok(TransferSystem { lattice, rel })
    }

    pub(crate) fn new_unchecked(lattice: Arc<Lattice>, rel: Relation) -> Self {
        TransferSystem { lattice, rel }
    }

    pub fn empty(lattice: Arc<Lattice>) -> Self {
        let n = lattice.size();
        TransferSystem {
            lattice,
            rel: Relation::empty(n),
        }
    }

    /// The full system: every relation of the lattice.
    pub fn full(lattice: Arc<Lattice>) -> Self {
        let rel = lattice.strict_order();
        TransferSystem { lattice, rel }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    /// `x R y`, including the reflexive pairs.
    pub fn relates(&self, x: usize, y: usize) -> bool {
        self.rel.contains_refl(x, y)
    }

    pub fn is_subsystem_of(&self, other: &TransferSystem) -> bool {
        self.rel.is_subset(&other.rel)
    }

    /// `R/1 = {x : x R 1}`, always containing the top.
    pub fn slice_top(&self) -> ElemSet {
        let top = self.lattice.top();
        let mut set = self.rel.column(top);
        set.insert(top);
        set
    }

    /// The 3-for-2 property: `x R y`, `y <= z` and `x R z` imply `y R z`.
    pub fn is_saturated(&self) -> bool {
        self.rel.pairs().all(|(x, y)| {
            let targets = self.rel.row(x).0 & self.lattice.up_set(y).0 & !(1 << y);
            ElemSet(targets).iter().all(|z| self.rel.contains(y, z))
        })
    }

    /// Whether the system is generated by its relations into the top.
    pub fn is_disklike(&self) -> bool {
        let top = self.lattice.top();
        let n = self.lattice.size();
        let seed = Relation::from_pairs(n, self.rel.column(top).iter().map(|x| (x, top)));
        close_transfer(&self.lattice, &seed) == self.rel
    }

    /// The covering relations contained in the system.
    pub fn cover_set(&self) -> Relation {
        self.rel.intersection(self.lattice.covering_relations())
    }
}

/// Intersection of two transfer systems.
pub fn ts_meet(a: &TransferSystem, b: &TransferSystem) -> Result<TransferSystem> {
    if !same_carrier(&a.lattice, &b.lattice) {
        return Err(Error::CarrierMismatch);
    }
    Ok(TransferSystem {
        lattice: a.lattice.clone(),
        rel: a.rel.intersection(&b.rel),
    })
}

/// The transfer system generated by the union.
pub fn ts_join(a: &TransferSystem, b: &TransferSystem) -> Result<TransferSystem> {
    if !same_carrier(&a.lattice, &b.lattice) {
        return Err(Error::CarrierMismatch);
    }
    generate(&a.lattice, &a.rel.union(&b.rel))
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && same_carrier(&self.lattice, &other.lattice)
    }
}

impl Eq for TransferSystem {}

impl Hash for TransferSystem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rel.hash(state);
    }
}

impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rel.cmp(&other.rel)
    }
}

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .rel
            .pairs()
            .map(|(x, y)| format!("{}→{}", self.lattice.label(x), self.lattice.label(y)))
            .collect();
        write!(f, "TransferSystem{{{}}}", pairs.join(", "))
    }
}

/// A set of covering relations on a modular lattice satisfying the two
/// saturated-cover conditions.
#[derive(Clone, PartialEq, Eq)]
pub struct SaturatedCover {
    lattice: Arc<Lattice>,
    covers: Relation,
}

impl fmt::Debug for SaturatedCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SaturatedCover{:?}", self.covers)
    }
}

fn check_cover_subset(lattice: &Lattice, q: &Relation) -> Result<()> {
    if !lattice.is_modular() {
        return Err(Error::NotModular);
    }
    if q.size() != lattice.size() {
        return Err(Error::CarrierMismatch);
    }
    match q.pairs().find(|&(x, y)| !lattice.covers(x, y)) {
        Some((x, y)) => Err(Error::NotACoverSubset(x, y)),
        None => Ok(()),
    }
}

/// Least cover set containing `q` that satisfies both conditions. Both are
/// Horn rules, so this is a closure operator on subsets of the covers.
fn close_cover(lattice: &Lattice, diamonds: &[crate::lattice::Diamond], q: &Relation) -> Relation {
    let mut q = q.clone();
    loop {
        let mut changed = false;
        // x Q (x ∨ y) forces (x ∧ y) Q y.
        for (x, j) in q.clone().pairs() {
            for y in lattice.elements() {
                if lattice.join(x, y) == j {
                    let m = lattice.meet(x, y);
                    changed |= q.insert(m, y);
                }
            }
        }
        for d in diamonds {
            let edges = d.edges();
            let present = edges.iter().filter(|&&(a, b)| q.contains(a, b)).count();
            if present == 3 {
                for (a, b) in edges {
                    changed |= q.insert(a, b);
                }
            }
        }
        if !changed {
            return q;
        }
    }
}

/// Whether `q` is a saturated cover of the modular lattice.
pub fn is_saturated_cover(lattice: &Lattice, q: &Relation) -> Result<bool> {
    check_cover_subset(lattice, q)?;
    Ok(close_cover(lattice, &lattice.covering_diamonds(), q) == *q)
}

/// Every saturated cover of a modular lattice, in canonical order.
pub fn enumerate_saturated_covers(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<SaturatedCover>> {
    if !lattice.is_modular() {
        return Err(Error::NotModular);
    }
    let diamonds = lattice.covering_diamonds();
    let sets = closure_system::all_closed(
        lattice.covering_relations().rows(),
        |s| {
            close_cover(lattice, &diamonds, &Relation::from_rows(s.to_vec()))
                .rows()
                .to_vec()
        },
        limit,
    )?;
    Ok(sets
        .into_iter()
        .map(|rows| SaturatedCover {
            lattice: lattice.clone(),
            covers: Relation::from_rows(rows),
        })
        .collect())
}

impl SaturatedCover {
    pub fn new(lattice: Arc<Lattice>, covers: Relation) -> Result<Self> {
        if !is_saturated_cover(&lattice, &covers)? {
            return Err(Error::NotASaturatedCover);
        }
        Ok(SaturatedCover { lattice, covers })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn covers(&self) -> &Relation {
        &self.covers
    }
}

/// The covering relations of a saturated transfer system.
pub fn cover_of(system: &TransferSystem) -> Result<SaturatedCover> {
    if !system.lattice.is_modular() {
        return Err(Error::NotModular);
    }
    if !system.is_saturated() {
        return Err(Error::NotSaturated);
    }
    Ok(SaturatedCover {
        lattice: system.lattice.clone(),
        covers: system.cover_set(),
    })
}

fn transitive_closure(rel: &Relation) -> Relation {
    let mut rows = rel.rows().to_vec();
    let n = rows.len();
    for k in 0..n {
        for x in 0..n {
            if rows[x] >> k & 1 == 1 {
                rows[x] |= rows[k];
            }
        }
    }
    for (x, row) in rows.iter_mut().enumerate() {
        *row &= !(1 << x);
    }
    Relation::from_rows(rows)
}

/// The unique saturated transfer system whose covering relations are `q`.
///
/// The transitive closure of `q` is tried first and verified; if it fails
/// verification the saturated systems are searched directly.
pub fn ts_of(q: &SaturatedCover) -> Result<TransferSystem> {
    let lattice = &q.lattice;
    let candidate = TransferSystem {
        lattice: lattice.clone(),
        rel: transitive_closure(&q.covers),
    };
    let verified = validate_transfer(lattice, &candidate.rel)?.is_none()
        && candidate.is_saturated()
        && candidate.cover_set() == q.covers;
    if verified {
        return Ok(candidate);
    }
    enumerate_saturated(lattice, DEFAULT_MAX_STRUCTURES)?
        .into_iter()
        .find(|r| r.cover_set() == q.covers)
        .ok_or(Error::NoMatchingSystem)
}
