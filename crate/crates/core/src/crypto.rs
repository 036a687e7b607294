//! Submonoids, the reflective/submonoid Galois connection, monads and
//! fibrant/cofibrant model structures.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{ElemSet, Relation};
use crate::closure_system;
use crate::cochar::{search_extensive_maps, Endo};
use crate::error::{Error, Result};
use crate::factorization::{from_transfer, FactorizationSystem};
use crate::lattice::Lattice;
use crate::transfer::{close_transfer, same_carrier, TransferSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidOp {
    Meet,
    Join,
}

impl MonoidOp {
    pub fn apply(self, lattice: &Lattice, x: usize, y: usize) -> usize {
        match self {
            MonoidOp::Meet => lattice.meet(x, y),
            MonoidOp::Join => lattice.join(x, y),
        }
    }

    pub fn identity(self, lattice: &Lattice) -> usize {
        match self {
            MonoidOp::Meet => lattice.top(),
            MonoidOp::Join => lattice.bottom(),
        }
    }
}

impl fmt::Display for MonoidOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonoidOp::Meet => "meet",
            MonoidOp::Join => "join",
        })
    }
}

/// A subset containing the identity of `op` and closed under `op`.
#[derive(Clone, PartialEq, Eq)]
pub struct Submonoid {
    lattice: Arc<Lattice>,
    op: MonoidOp,
    members: ElemSet,
}

impl fmt::Debug for Submonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submonoid({}, {:?})", self.op, self.members)
    }
}

fn monoid_closure(lattice: &Lattice, op: MonoidOp, set: u64) -> u64 {
    let mut set = set | 1 << op.identity(lattice);
    loop {
        let mut next = set;
        for x in ElemSet(set).iter() {
            for y in ElemSet(set).iter() {
                next |= 1 << op.apply(lattice, x, y);
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

impl Submonoid {
    pub fn new(lattice: Arc<Lattice>, op: MonoidOp, members: ElemSet) -> Result<Self> {
        if members.0 & !lattice.all().0 != 0 || monoid_closure(&lattice, op, members.0) != members.0 {
            return Err(Error::NotASubmonoid);
        }
        Ok(Submonoid { lattice, op, members })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn op(&self) -> MonoidOp {
        self.op
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }
}

/// All submonoids of `(P, op)` in canonical order (ascending bitmask).
pub fn enumerate_submonoids(lattice: &Arc<Lattice>, op: MonoidOp, limit: usize) -> Result<Vec<Submonoid>> {
    let sets = closure_system::all_closed(&[lattice.all().0], |s| vec![monoid_closure(lattice, op, s[0])], limit)?;
    Ok(sets
        .into_iter()
        .map(|s| Submonoid {
            lattice: lattice.clone(),
            op,
            members: ElemSet(s[0]),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sidedness {
    Reflective,
    Coreflective,
}

/// `R/1` of a reflective system as a meet-submonoid, or `0\L` of a
/// coreflective one as a join-submonoid.
pub fn fac_to_submonoid(fs: &FactorizationSystem, side: Sidedness) -> Result<Submonoid> {
    let lattice = fs.lattice().clone();
    match side {
        Sidedness::Reflective => {
            if !fs.is_reflective() {
                return Err(Error::NotReflective);
            }
            Ok(Submonoid {
                lattice,
                op: MonoidOp::Meet,
                members: fs.right_slice_top(),
            })
        }
        Sidedness::Coreflective => {
            if !fs.is_coreflective() {
                return Err(Error::NotCoreflective);
            }
            Ok(Submonoid {
                lattice,
                op: MonoidOp::Join,
                members: fs.left_coslice_bottom(),
            })
        }
    }
}

/// `⟨S/1⟩`: the transfer system generated by `{(x, 1) : x ∈ S}`.
fn generated_by_top_relations(lattice: &Arc<Lattice>, set: ElemSet) -> TransferSystem {
    let top = lattice.top();
    let seed = Relation::from_pairs(lattice.size(), set.iter().map(|x| (x, top)));
    TransferSystem::new_unchecked(lattice.clone(), close_transfer(lattice, &seed))
}

/// `F(S) = (⊥⟨S/1⟩, ⟨S/1⟩)`, the left adjoint of `(L, R) ↦ R/1`.
pub fn fac_of_elements(lattice: &Arc<Lattice>, set: ElemSet) -> FactorizationSystem {
    from_transfer(&generated_by_top_relations(lattice, set))
}

/// The inverse of [`fac_to_submonoid`]. Join-submonoids are handled on the
/// dual lattice and transported back.
pub fn submonoid_to_fac(submonoid: &Submonoid) -> FactorizationSystem {
    let lattice = &submonoid.lattice;
    match submonoid.op {
        MonoidOp::Meet => fac_of_elements(lattice, submonoid.members),
        MonoidOp::Join => {
            let dual = Arc::new(lattice.dual());
            let members = submonoid.members.iter().map(|x| lattice.op(x)).collect();
            fac_of_elements(&dual, members).dual_on(lattice)
        }
    }
}

/// One instance of the adjunction: `F(S) <= F` iff `S ⊆ R/1`.
pub fn galois_check(lattice: &Arc<Lattice>, set: ElemSet, fs: &FactorizationSystem) -> bool {
    let lhs = fac_of_elements(lattice, set).le(fs);
    let rhs = set.is_subset(fs.right_slice_top());
    lhs == rhs
}

/// Monad laws on a poset: `T` monotone, unit `x <= Tx`, multiplication
/// `TTx <= Tx`.
pub fn is_monad(lattice: &Lattice, t: &Endo) -> bool {
    t.table().len() == lattice.size()
        && t.is_monotone()
        && lattice.elements().all(|x| lattice.leq(x, t.apply(x)))
        && lattice.elements().all(|x| lattice.leq(t.apply(t.apply(x)), t.apply(x)))
}

/// Comonad laws: `T` monotone, counit `Tx <= x`, comultiplication
/// `Tx <= TTx`.
pub fn is_comonad(lattice: &Lattice, t: &Endo) -> bool {
    t.table().len() == lattice.size()
        && t.is_monotone()
        && lattice.elements().all(|x| lattice.leq(t.apply(x), x))
        && lattice.elements().all(|x| lattice.leq(t.apply(x), t.apply(t.apply(x))))
}

/// Every monad, by search over monotone maps satisfying the unit law with
/// the multiplication law checked as images are assigned.
pub fn enumerate_monads(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<Endo>> {
    let tables = search_extensive_maps(lattice, limit, &|l, x, y, table| y == x || l.leq(table[y], y))?;
    tables
        .into_iter()
        .map(|t| {
            let e = Endo::new(lattice.clone(), t)?;
            debug_assert!(is_monad(lattice, &e));
            Ok(e)
        })
        .collect()
}

/// Every comonad, as monads of the dual lattice.
pub fn enumerate_comonads(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<Endo>> {
    let dual = Arc::new(lattice.dual());
    let mut out: Vec<Endo> = enumerate_monads(&dual, limit)?
        .iter()
        .map(|m| m.dual_on(lattice))
        .collect();
    out.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(out)
}

/// `(x, y)` with some `z`, `x AC z` and `z AF y`.
fn compose(lattice: &Lattice, first: &Relation, second: &Relation) -> Relation {
    let mut w = Relation::empty(lattice.size());
    for x in lattice.elements() {
        let mut via = first.row(x);
        via.insert(x);
        for z in via.iter() {
            for y in second.row(z).iter().chain(std::iter::once(z)) {
                w.insert(x, y);
            }
        }
    }
    w
}

/// Two-out-of-three over `x <= y <= z` (reflexive pairs implied).
pub fn satisfies_two_of_three(lattice: &Lattice, w: &Relation) -> bool {
    lattice.elements().all(|x| {
        lattice.up_set(x).iter().all(|y| {
            lattice.up_set(y).iter().all(|z| {
                let held = [w.contains_refl(x, y), w.contains_refl(y, z), w.contains_refl(x, z)];
                held.iter().filter(|&&b| b).count() != 2
            })
        })
    })
}

/// An interval `(C, AF) <= (AC, F)` of factorization systems with weak
/// equivalences `W = AF ∘ AC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelStructure {
    pub lower: FactorizationSystem,
    pub upper: FactorizationSystem,
    pub weak: Relation,
}

impl ModelStructure {
    /// Forms the candidate with `W` computed from the two systems.
    pub fn candidate(lower: FactorizationSystem, upper: FactorizationSystem) -> Result<Self> {
        if !same_carrier(lower.lattice(), upper.lattice()) {
            return Err(Error::CarrierMismatch);
        }
        let weak = compose(lower.lattice(), upper.left(), lower.right());
        Ok(ModelStructure { lower, upper, weak })
    }

    pub fn is_fibrant(&self) -> bool {
        self.upper.right() == &self.upper.lattice().strict_order()
    }

    pub fn is_cofibrant(&self) -> bool {
        self.lower.left() == &self.lower.lattice().strict_order()
    }
}

/// `lower <= upper` and `W` satisfies 3-for-2.
pub fn is_model_structure(candidate: &ModelStructure) -> Result<bool> {
    if !same_carrier(candidate.lower.lattice(), candidate.upper.lattice()) {
        return Err(Error::CarrierMismatch);
    }
    let lattice = candidate.lower.lattice();
    let expected = compose(lattice, candidate.upper.left(), candidate.lower.right());
    Ok(candidate.weak == expected
        && candidate.lower.le(&candidate.upper)
        && satisfies_two_of_three(lattice, &candidate.weak))
}

/// `[(L, R) <= (Id, All)]` for a coreflective system.
pub fn make_fibrant(fs: &FactorizationSystem) -> Result<ModelStructure> {
    if !fs.is_coreflective() {
        return Err(Error::NotCoreflective);
    }
    ModelStructure::candidate(fs.clone(), FactorizationSystem::identities_all(fs.lattice().clone()))
}

/// `[(All, Id) <= (L, R)]` for a reflective system.
pub fn make_cofibrant(fs: &FactorizationSystem) -> Result<ModelStructure> {
    if !fs.is_reflective() {
        return Err(Error::NotReflective);
    }
    ModelStructure::candidate(FactorizationSystem::all_identities(fs.lattice().clone()), fs.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochar::enumerate_closure_operators;
    use crate::factorization::enumerate_fac;
    use crate::lattice::Standard;

    fn lat(s: Standard) -> Arc<Lattice> {
        Arc::new(s.build().unwrap())
    }

    fn fs_with_right(l: &Arc<Lattice>, pairs: &[(usize, usize)]) -> FactorizationSystem {
        FactorizationSystem::from_relation(l.clone(), Relation::from_pairs(l.size(), pairs.iter().copied())).unwrap()
    }

    #[test]
    fn submonoid_counts() {
        assert_eq!(
            enumerate_submonoids(&lat(Standard::Chain(2)), MonoidOp::Meet, 100)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(
            enumerate_submonoids(&lat(Standard::Grid(1, 1)), MonoidOp::Join, 100)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            enumerate_submonoids(&lat(Standard::Boolean(2)), MonoidOp::Meet, 100)
                .unwrap()
                .len(),
            7
        );
    }

    #[test]
    fn fac_to_submonoid_examples() {
        let c2 = lat(Standard::Chain(2));
        let all = FactorizationSystem::identities_all(c2.clone());
        assert_eq!(
            fac_to_submonoid(&all, Sidedness::Reflective).unwrap().members(),
            c2.all()
        );
        let fs = fs_with_right(&c2, &[(0, 1), (0, 2)]);
        assert_eq!(
            fac_to_submonoid(&fs, Sidedness::Reflective).unwrap().members().to_vec(),
            vec![0, 2]
        );
        let sq = lat(Standard::Grid(1, 1));
        let nonref = enumerate_fac(&sq, 100)
            .unwrap()
            .into_iter()
            .find(|f| !f.is_reflective())
            .unwrap();
        assert_eq!(
            fac_to_submonoid(&nonref, Sidedness::Reflective).unwrap_err(),
            Error::NotReflective
        );
    }

    #[test]
    fn submonoid_to_fac_examples() {
        let sq = lat(Standard::Grid(1, 1));
        let top = Submonoid::new(sq.clone(), MonoidOp::Meet, ElemSet::singleton(3)).unwrap();
        assert!(submonoid_to_fac(&top).right().is_empty());
        let a1 = Submonoid::new(sq.clone(), MonoidOp::Meet, [1, 3].into_iter().collect()).unwrap();
        assert_eq!(
            submonoid_to_fac(&a1).right(),
            &Relation::from_pairs(4, [(1, 3), (0, 2)])
        );
        assert!(Submonoid::new(sq.clone(), MonoidOp::Meet, [1, 2, 3].into_iter().collect()).is_err());

        let c3 = lat(Standard::Chain(3));
        for op in [MonoidOp::Meet, MonoidOp::Join] {
            for a in enumerate_submonoids(&c3, op, 100).unwrap() {
                let fs = submonoid_to_fac(&a);
                let side = match op {
                    MonoidOp::Meet => Sidedness::Reflective,
                    MonoidOp::Join => Sidedness::Coreflective,
                };
                assert_eq!(fac_to_submonoid(&fs, side).unwrap(), a);
            }
        }
    }

    #[test]
    fn galois_examples() {
        let c2 = lat(Standard::Chain(2));
        let full = FactorizationSystem::identities_all(c2.clone());
        let ids = FactorizationSystem::all_identities(c2.clone());
        for fs in [&full, &ids] {
            assert!(galois_check(&c2, ElemSet::EMPTY, fs));
        }
        let s = ElemSet::singleton(0);
        assert!(fac_of_elements(&c2, s).le(&full) && s.is_subset(full.right_slice_top()));
        assert!(galois_check(&c2, s, &full));
        assert!(!fac_of_elements(&c2, s).le(&ids) && !s.is_subset(ids.right_slice_top()));
        assert!(galois_check(&c2, s, &ids));
    }

    #[test]
    fn monad_examples() {
        let c1 = lat(Standard::Chain(1));
        assert!(is_monad(&c1, &Endo::identity(c1.clone())));
        assert!(is_monad(&c1, &Endo::constant(c1.clone(), 1)));
        assert!(!is_monad(&c1, &Endo::constant(c1.clone(), 0)));
        assert!(is_comonad(&c1, &Endo::constant(c1.clone(), 0)));
        let b3 = lat(Standard::Boolean(3));
        let monads = enumerate_monads(&b3, 1000).unwrap();
        assert_eq!(monads, enumerate_closure_operators(&b3, 1000).unwrap());
    }

    #[test]
    fn model_structure_examples() {
        let c2 = lat(Standard::Chain(2));
        let all_ids = FactorizationSystem::all_identities(c2.clone());
        let fibrant = make_fibrant(&all_ids).unwrap();
        assert!(fibrant.weak.is_empty());
        assert!(is_model_structure(&fibrant).unwrap());

        let sat = fs_with_right(&c2, &[(1, 2)]);
        let m = make_fibrant(&sat).unwrap();
        assert_eq!(m.weak, Relation::from_pairs(3, [(1, 2)]));
        assert!(is_model_structure(&m).unwrap());
        assert!(m.is_fibrant());

        let unsat = fs_with_right(&c2, &[(0, 1), (0, 2)]);
        let cand = ModelStructure::candidate(unsat.clone(), FactorizationSystem::identities_all(c2.clone())).unwrap();
        assert!(!is_model_structure(&cand).unwrap());
        assert_eq!(make_fibrant(&unsat).unwrap_err(), Error::NotCoreflective);

        // lower = upper with saturated right class: W = R.
        let same = ModelStructure::candidate(sat.clone(), sat.clone()).unwrap();
        assert!(is_model_structure(&same).unwrap());

        let extreme = ModelStructure::candidate(all_ids, FactorizationSystem::identities_all(c2.clone())).unwrap();
        assert!(extreme.weak.is_empty());
        assert!(is_model_structure(&extreme).unwrap());

        let other = FactorizationSystem::all_identities(lat(Standard::Chain(3)));
        assert_eq!(
            ModelStructure::candidate(sat, other).unwrap_err(),
            Error::CarrierMismatch
        );
    }

    #[test]
    fn fibrant_models_on_square() {
        let sq = lat(Standard::Grid(1, 1));
        let universe = enumerate_fac(&sq, 100).unwrap();
        let fibrant: Vec<_> = universe
            .iter()
            .filter(|f| f.is_coreflective())
            .map(|f| make_fibrant(f).unwrap())
            .collect();
        assert_eq!(fibrant.len(), 7);
        assert!(fibrant.iter().all(|m| is_model_structure(m).unwrap()));
    }
}
