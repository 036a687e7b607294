//! Lifting properties and factorization systems on a lattice viewed as a
//! category.
//!
//! In a poset every square commutes iff `a <= x` and `b <= y`, and the lift
//! exists iff `b <= x`, so weak and orthogonal factorization systems agree.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{ElemSet, Relation};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::transfer::{check_refines, same_carrier, validate_transfer, TransferSystem};

/// Whether `i = (a, b)` has the left lifting property against `p = (x, y)`.
pub fn lifts(lattice: &Lattice, i: (usize, usize), p: (usize, usize)) -> Result<bool> {
    let ((a, b), (x, y)) = (i, p);
    for (lo, hi) in [i, p] {
        if lo >= lattice.size() || hi >= lattice.size() || !lattice.leq(lo, hi) {
            return Err(Error::NotARelation(lo, hi));
        }
    }
    Ok(!(lattice.leq(a, x) && lattice.leq(b, y)) || lattice.leq(b, x))
}

/// Whether `(a, b)` lifts against every pair of `m`.
fn lifts_against_all(lattice: &Lattice, a: usize, b: usize, m: &Relation) -> bool {
    // Squares exist for (x, y) in m with a <= x and b <= y; each needs b <= x.
    lattice
        .up_set(a)
        .iter()
        .all(|x| lattice.leq(b, x) || m.row(x).0 & lattice.up_set(b).0 == 0)
}

/// `⊥M`: the relations with the left lifting property against all of `m`
/// (identities are implied and not stored).
pub fn left_complement(lattice: &Lattice, m: &Relation) -> Relation {
    let strict = lattice.strict_order();
    Relation::from_pairs(
        lattice.size(),
        strict.pairs().filter(|&(a, b)| lifts_against_all(lattice, a, b, m)),
    )
}

/// `M⊥`: the relations with the right lifting property against all of `m`.
pub fn right_complement(lattice: &Lattice, m: &Relation) -> Relation {
    let strict = lattice.strict_order();
    Relation::from_pairs(
        lattice.size(),
        strict.pairs().filter(|&(x, y)| {
            m.pairs()
                .all(|(a, b)| !(lattice.leq(a, x) && lattice.leq(b, y)) || lattice.leq(b, x))
        }),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Why a pair of classes fails to be a factorization system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FsViolation {
    /// No `z` with `x L z R y`.
    MissingFactorization { x: usize, y: usize },
    /// The class on `side` differs from the complement of the other class;
    /// `witness` is in exactly one of them.
    ComplementMismatch { side: Side, witness: (usize, usize) },
}

impl fmt::Display for FsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FsViolation::MissingFactorization { x, y } => write!(f, "{x} <= {y} does not factor"),
            FsViolation::ComplementMismatch { side, witness } => {
                write!(f, "{side:?} class disagrees with the lifting complement at {witness:?}")
            }
        }
    }
}

fn first_difference(a: &Relation, b: &Relation) -> Option<(usize, usize)> {
    a.pairs()
        .find(|&(x, y)| !b.contains(x, y))
        .or_else(|| b.pairs().find(|&(x, y)| !a.contains(x, y)))
}

/// Checks both complement equalities and that every relation factors.
pub fn validate_fs(lattice: &Lattice, left: &Relation, right: &Relation) -> Result<Option<FsViolation>> {
    check_refines(lattice, left)?;
    check_refines(lattice, right)?;
    if let Some(witness) = first_difference(left, &left_complement(lattice, right)) {
        return Ok(Some(FsViolation::ComplementMismatch {
            side: Side::Left,
            witness,
        }));
    }
    if let Some(witness) = first_difference(right, &right_complement(lattice, left)) {
        return Ok(Some(FsViolation::ComplementMismatch {
            side: Side::Right,
            witness,
        }));
    }
    for x in lattice.elements() {
        for y in lattice.up_set(x).iter() {
            let factors = lattice
                .up_set(x)
                .iter()
                .any(|z| left.contains_refl(x, z) && lattice.leq(z, y) && right.contains_refl(z, y));
            if !factors {
                return Ok(Some(FsViolation::MissingFactorization { x, y }));
            }
        }
    }
    Ok(None)
}

/// A factorization system `(L, R)`. Both classes are stored as strict pairs.
#[derive(Clone)]
pub struct FactorizationSystem {
    lattice: Arc<Lattice>,
    left: Relation,
    right: Relation,
}

impl FactorizationSystem {
    /// Validates the pair of classes.
    pub fn new(lattice: Arc<Lattice>, left: Relation, right: Relation) -> Result<Self> {
        if let Some(v) = validate_fs(&lattice, &left, &right)? {
            return Err(Error::NotAFactorizationSystem(v.to_string()));
        }
        Ok(FactorizationSystem { lattice, left, right })
    }

    /// `(⊥R, R)` for a relation that must be a transfer system.
    pub fn from_relation(lattice: Arc<Lattice>, right: Relation) -> Result<Self> {
        if let Some(v) = validate_transfer(&lattice, &right)? {
            return Err(Error::NotATransferSystem(v.to_string()));
        }
        let left = left_complement(&lattice, &right);
        Ok(FactorizationSystem { lattice, left, right })
    }

    /// The least system: only identities on the right.
    pub fn all_identities(lattice: Arc<Lattice>) -> Self {
        let n = lattice.size();
        let left = lattice.strict_order();
        FactorizationSystem {
            lattice,
            left,
            right: Relation::empty(n),
        }
    }

    /// The greatest system: identities on the left, everything on the right.
    pub fn identities_all(lattice: Arc<Lattice>) -> Self {
        let n = lattice.size();
        let right = lattice.strict_order();
        FactorizationSystem {
            lattice,
            left: Relation::empty(n),
            right,
        }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn left(&self) -> &Relation {
        &self.left
    }

    pub fn right(&self) -> &Relation {
        &self.right
    }

    /// `(L, R) <= (L', R')` iff `R ⊆ R'`.
    pub fn le(&self, other: &FactorizationSystem) -> bool {
        self.right.is_subset(&other.right)
    }

    /// `R/1`.
    pub fn right_slice_top(&self) -> ElemSet {
        let top = self.lattice.top();
        let mut set = self.right.column(top);
        set.insert(top);
        set
    }

    /// `0\L`.
    pub fn left_coslice_bottom(&self) -> ElemSet {
        let mut set = self.left.row(self.lattice.bottom());
        set.insert(self.lattice.bottom());
        set
    }

    /// The reflection onto `R/1`: `x ↦ min{y ∈ R/1 : x <= y}`. `R/1` is
    /// closed under meet by pullback stability, so the minimum exists.
    pub fn reflection(&self) -> Vec<usize> {
        let slice = self.right_slice_top();
        let l = &self.lattice;
        l.elements()
            .map(|x| l.meet_all(ElemSet(slice.0 & l.up_set(x).0)))
            .collect()
    }

    /// The coreflection onto `0\L`: `x ↦ max{y ∈ 0\L : y <= x}`.
    pub fn coreflection(&self) -> Vec<usize> {
        let coslice = self.left_coslice_bottom();
        let l = &self.lattice;
        l.elements()
            .map(|x| l.join_all(ElemSet(coslice.0 & l.down_set(x).0)))
            .collect()
    }

    /// Reflective iff the left class is exactly the relations inverted by
    /// the reflection onto `R/1`, i.e. the system is the one determined by
    /// the reflective subobject `R/1`.
    ///
    /// Meet-closure of `R/1` alone does not distinguish anything here: it
    /// holds for every system on a lattice.
    pub fn is_reflective(&self) -> bool {
        let r = self.reflection();
        self.lattice
            .strict_order()
            .pairs()
            .all(|(x, y)| self.left.contains(x, y) == (r[x] == r[y]))
    }

    /// Coreflective iff the right class is exactly the relations inverted by
    /// the coreflection onto `0\L`.
    pub fn is_coreflective(&self) -> bool {
        let c = self.coreflection();
        self.lattice
            .strict_order()
            .pairs()
            .all(|(x, y)| self.right.contains(x, y) == (c[x] == c[y]))
    }

    /// `(R^op, L^op)` on the dual lattice, which must be `lattice().dual()`.
    pub fn dual_on(&self, dual: &Arc<Lattice>) -> FactorizationSystem {
        debug_assert_eq!(dual.size(), self.lattice.size());
        FactorizationSystem {
            lattice: dual.clone(),
            left: self.right.opposite(),
            right: self.left.opposite(),
        }
    }

    pub fn dual(&self) -> FactorizationSystem {
        self.dual_on(&Arc::new(self.lattice.dual()))
    }
}

impl PartialEq for FactorizationSystem {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right && same_carrier(&self.lattice, &other.lattice)
    }
}

impl Eq for FactorizationSystem {}

impl fmt::Debug for FactorizationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FactorizationSystem")
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// `R ↦ (⊥R, R)`.
pub fn from_transfer(system: &TransferSystem) -> FactorizationSystem {
    let lattice = system.lattice().clone();
    let right = system.relation().clone();
    let left = left_complement(&lattice, &right);
    FactorizationSystem { lattice, left, right }
}

/// `(L, R) ↦ R`.
pub fn to_transfer(fs: &FactorizationSystem) -> TransferSystem {
    TransferSystem::new_unchecked(fs.lattice.clone(), fs.right.clone())
}

/// All factorization systems, via the transfer systems.
pub fn enumerate_fac(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<FactorizationSystem>> {
    Ok(crate::transfer::enumerate_transfer(lattice, limit)?
        .iter()
        .map(from_transfer)
        .collect())
}

/// The factoring object of `x <= y`: the unique `z` with `x L z R y`.
pub fn factor(fs: &FactorizationSystem, x: usize, y: usize) -> Result<usize> {
    let lattice = &fs.lattice;
    if x >= lattice.size() || y >= lattice.size() || !lattice.leq(x, y) {
        return Err(Error::NotComparable(x, y));
    }
    let candidates: ElemSet = lattice
        .up_set(x)
        .iter()
        .filter(|&w| lattice.leq(w, y) && fs.right.contains_refl(w, y))
        .collect();
    let z = lattice.meet_all(candidates);
    if !candidates.contains(z) || !fs.left.contains_refl(x, z) {
        return Err(Error::NonUniqueFactorization(x, y));
    }
    let factorizations = lattice
        .up_set(x)
        .iter()
        .filter(|&w| lattice.leq(w, y) && fs.left.contains_refl(x, w) && fs.right.contains_refl(w, y))
        .count();
    if factorizations != 1 {
        return Err(Error::NonUniqueFactorization(x, y));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Standard;
    use crate::transfer::enumerate_transfer;

    fn lat(s: Standard) -> Arc<Lattice> {
        Arc::new(s.build().unwrap())
    }

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied())
    }

    #[test]
    fn lifting_examples() {
        let c2 = lat(Standard::Chain(2));
        for x in 0..3 {
            for y in x..3 {
                assert!(lifts(&c2, (1, 1), (x, y)).unwrap());
            }
        }
        assert!(lifts(&c2, (1, 2), (0, 1)).unwrap());
        assert!(!lifts(&c2, (0, 1), (0, 1)).unwrap());
        assert_eq!(lifts(&c2, (2, 1), (0, 1)).unwrap_err(), Error::NotARelation(2, 1));
    }

    #[test]
    fn complement_examples() {
        let c2 = lat(Standard::Chain(2));
        assert!(left_complement(&c2, &c2.strict_order()).is_empty());
        assert_eq!(left_complement(&c2, &rel(3, &[(0, 1), (0, 2)])), rel(3, &[(1, 2)]));
        assert_eq!(left_complement(&c2, &Relation::empty(3)), c2.strict_order());
        assert_eq!(right_complement(&c2, &Relation::empty(3)), c2.strict_order());
        assert_eq!(right_complement(&c2, &rel(3, &[(1, 2)])), rel(3, &[(0, 1), (0, 2)]));
    }

    #[test]
    fn validate_examples() {
        let c2 = lat(Standard::Chain(2));
        let all = c2.strict_order();
        let none = Relation::empty(3);
        assert_eq!(validate_fs(&c2, &none, &all).unwrap(), None);
        assert_eq!(validate_fs(&c2, &all, &none).unwrap(), None);
        assert_eq!(
            validate_fs(&c2, &rel(3, &[(1, 2)]), &rel(3, &[(0, 1), (0, 2)])).unwrap(),
            None
        );
        assert!(matches!(
            validate_fs(&c2, &none, &none).unwrap(),
            Some(FsViolation::ComplementMismatch { side: Side::Left, .. })
        ));
    }

    #[test]
    fn from_transfer_examples() {
        let c2 = lat(Standard::Chain(2));
        let empty = from_transfer(&TransferSystem::empty(c2.clone()));
        assert_eq!(empty, FactorizationSystem::all_identities(c2.clone()));
        let r = TransferSystem::new(c2.clone(), rel(3, &[(0, 1), (0, 2)])).unwrap();
        assert_eq!(from_transfer(&r).left(), &rel(3, &[(1, 2)]));

        let sq = lat(Standard::Grid(1, 1));
        for r in enumerate_transfer(&sq, 100).unwrap() {
            let fs = from_transfer(&r);
            assert_eq!(validate_fs(&sq, fs.left(), fs.right()).unwrap(), None);
            assert_eq!(to_transfer(&fs), r);
        }
        assert!(FactorizationSystem::from_relation(c2, rel(3, &[(0, 2)])).is_err());
    }

    #[test]
    fn factor_examples() {
        let c2 = lat(Standard::Chain(2));
        let fs = from_transfer(&TransferSystem::new(c2.clone(), rel(3, &[(0, 1), (0, 2)])).unwrap());
        for x in 0..3 {
            assert_eq!(factor(&fs, x, x).unwrap(), x);
        }
        assert_eq!(factor(&fs, 0, 2).unwrap(), 0);
        assert_eq!(factor(&fs, 1, 2).unwrap(), 2);
        assert_eq!(factor(&fs, 2, 1).unwrap_err(), Error::NotComparable(2, 1));
    }

    #[test]
    fn reflective_counts_on_square() {
        let sq = lat(Standard::Grid(1, 1));
        let all = enumerate_fac(&sq, 100).unwrap();
        assert_eq!(all.iter().filter(|f| f.is_reflective()).count(), 7);
        assert_eq!(all.iter().filter(|f| f.is_coreflective()).count(), 7);
        let c2 = lat(Standard::Chain(2));
        for fs in [
            FactorizationSystem::all_identities(c2.clone()),
            FactorizationSystem::identities_all(c2),
        ] {
            assert!(fs.is_reflective() && fs.is_coreflective());
        }
    }

    #[test]
    fn dual_system_is_valid() {
        let n5 = lat(Standard::Pentagon);
        let dual = Arc::new(n5.dual());
        for fs in enumerate_fac(&n5, 1000).unwrap() {
            let d = fs.dual_on(&dual);
            assert_eq!(validate_fs(&dual, d.left(), d.right()).unwrap(), None);
            assert_eq!(fs.is_reflective(), d.is_coreflective());
        }
    }
}
