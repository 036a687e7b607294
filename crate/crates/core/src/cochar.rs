//! Characteristic and cocharacteristic operators of factorization systems.
//!
//! For `(L, R)` on a lattice, `χ(x)` is the factoring object of `0 <= x` and
//! `λ(x)` the factoring object of `x <= 1`. `χ` is always an interior
//! operator and `λ` a closure operator; the fibers of both maps are
//! intervals of factorization systems.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bits::{ElemSet, Relation};
use crate::error::{Error, Result};
use crate::factorization::{from_transfer, FactorizationSystem};
use crate::lattice::Lattice;
use crate::transfer::{generate, same_carrier, TransferSystem};

/// A self-map of a lattice stored as a dense table.
#[derive(Clone)]
pub struct Endo {
    lattice: Arc<Lattice>,
    table: Vec<usize>,
}

impl Endo {
    /// Accepts any table of the right length; monotonicity is checked by the
    /// operations that need it.
    pub fn new(lattice: Arc<Lattice>, table: Vec<usize>) -> Result<Self> {
        let n = lattice.size();
        if table.len() != n {
            return Err(Error::TableLength {
                got: table.len(),
                expected: n,
            });
        }
        if let Some(&index) = table.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index, size: n });
        }
        Ok(Endo { lattice, table })
    }

    pub fn identity(lattice: Arc<Lattice>) -> Self {
        let table = lattice.elements().collect();
        Endo { lattice, table }
    }

    pub fn constant(lattice: Arc<Lattice>, value: usize) -> Self {
        let table = vec![value; lattice.size()];
        Endo { lattice, table }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// First pair `x <= y` with `f(x) ≰ f(y)`, if any.
    pub fn monotonicity_violation(&self) -> Option<(usize, usize)> {
        let l = &self.lattice;
        l.elements()
            .flat_map(|x| l.up_set(x).iter().map(move |y| (x, y)))
            .find(|&(x, y)| !l.leq(self.table[x], self.table[y]))
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violation().is_none()
    }

    /// Pointwise order `f <= g`.
    pub fn pointwise_le(&self, other: &Endo) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.lattice.leq(a, b))
    }

    /// The same map read on the dual lattice.
    pub fn dual_on(&self, dual: &Arc<Lattice>) -> Endo {
        let n = self.table.len();
        let table = (0..n).map(|x| n - 1 - self.table[n - 1 - x]).collect();
        Endo {
            lattice: dual.clone(),
            table,
        }
    }
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && same_carrier(&self.lattice, &other.lattice)
    }
}

impl Eq for Endo {}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo{:?}", self.table)
    }
}

/// Classification flags of a monotone self-map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorClass {
    pub extensive: bool,
    pub contractive: bool,
    pub idempotent: bool,
}

impl OperatorClass {
    pub fn is_closure(&self) -> bool {
        self.extensive && self.idempotent
    }

    pub fn is_interior(&self) -> bool {
        self.contractive && self.idempotent
    }
}

pub fn classify(f: &Endo) -> Result<OperatorClass> {
    if let Some((x, y)) = f.monotonicity_violation() {
        return Err(Error::NotMonotone(x, y));
    }
    let l = &f.lattice;
    Ok(OperatorClass {
        extensive: l.elements().all(|x| l.leq(x, f.apply(x))),
        contractive: l.elements().all(|x| l.leq(f.apply(x), x)),
        idempotent: l.elements().all(|x| f.apply(f.apply(x)) == f.apply(x)),
    })
}

/// Minimum of a candidate set: the iterated meet, required to be a member.
fn min_of(lattice: &Lattice, set: ElemSet, at: usize) -> Result<usize> {
    let m = lattice.meet_all(set);
    if set.contains(m) {
        Ok(m)
    } else {
        Err(Error::MinNotUnique(at))
    }
}

fn max_of(lattice: &Lattice, set: ElemSet, at: usize) -> Result<usize> {
    let m = lattice.join_all(set);
    if set.contains(m) {
        Ok(m)
    } else {
        Err(Error::MaxNotUnique(at))
    }
}

/// `χ(x) = min{y : y R x}`, computed from the right class only.
pub fn chi_right_only(fs: &FactorizationSystem) -> Result<Endo> {
    let l = fs.lattice();
    let right = fs.right();
    let table = l
        .elements()
        .map(|x| {
            let mut sources = right.column(x);
            sources.insert(x);
            min_of(l, sources, x)
        })
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: l.clone(),
        table,
    })
}

/// `λ(x) = min{y : x <= y, y R 1}`, computed from the right class only.
pub fn lambda_right_only(fs: &FactorizationSystem) -> Result<Endo> {
    let l = fs.lattice();
    let slice = fs.right_slice_top();
    let table = l
        .elements()
        .map(|x| min_of(l, ElemSet(slice.0 & l.up_set(x).0), x))
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: l.clone(),
        table,
    })
}

/// `χ(x) = max{y : 0 L y <= x}`, from the left class.
fn chi_from_left(fs: &FactorizationSystem) -> Result<Endo> {
    let l = fs.lattice();
    let coslice = fs.left_coslice_bottom();
    let table = l
        .elements()
        .map(|x| max_of(l, ElemSet(coslice.0 & l.down_set(x).0), x))
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: l.clone(),
        table,
    })
}

/// `λ(x) = max{y : x L y}`, from the left class.
fn lambda_from_left(fs: &FactorizationSystem) -> Result<Endo> {
    let l = fs.lattice();
    let table = l
        .elements()
        .map(|x| {
            let mut targets = fs.left().row(x);
            targets.insert(x);
            max_of(l, targets, x)
        })
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: l.clone(),
        table,
    })
}

/// The characteristic function, cross-checked against the left-class formula.
pub fn chi(fs: &FactorizationSystem) -> Result<Endo> {
    let f = chi_right_only(fs)?;
    let g = chi_from_left(fs)?;
    if let Some(x) = fs.lattice().elements().find(|&x| f.apply(x) != g.apply(x)) {
        return Err(Error::MinNotUnique(x));
    }
    Ok(f)
}

/// The cocharacteristic function, cross-checked against the left-class
/// formula.
pub fn lambda(fs: &FactorizationSystem) -> Result<Endo> {
    let f = lambda_right_only(fs)?;
    let g = lambda_from_left(fs)?;
    if let Some(x) = fs.lattice().elements().find(|&x| f.apply(x) != g.apply(x)) {
        return Err(Error::MinNotUnique(x));
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Chi,
    Lambda,
}

impl Which {
    pub fn apply(self, fs: &FactorizationSystem) -> Result<Endo> {
        match self {
            Which::Chi => chi(fs),
            Which::Lambda => lambda(fs),
        }
    }
}

/// A fiber of `χ` or `λ` together with its extreme points.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub which: Which,
    pub operator: Endo,
    pub members: Vec<FactorizationSystem>,
    pub lower: FactorizationSystem,
    pub upper: FactorizationSystem,
    /// Members are exactly the systems between `lower` and `upper`.
    pub is_interval: bool,
}

impl Fiber {
    /// The distinguished extreme point of the fiber: the reflective
    /// minimum for `λ`, the coreflective maximum for `χ`.
    pub fn distinguished(&self) -> &FactorizationSystem {
        match self.which {
            Which::Lambda => &self.lower,
            Which::Chi => &self.upper,
        }
    }

    pub fn distinguished_is_special(&self) -> bool {
        match self.which {
            Which::Lambda => self.lower.is_reflective(),
            Which::Chi => self.upper.is_coreflective(),
        }
    }
}

fn build_fiber(
    universe: &[FactorizationSystem],
    which: Which,
    operator: Endo,
    members: Vec<FactorizationSystem>,
) -> Result<Fiber> {
    let first = members.first().ok_or(Error::EmptyFiber)?;
    let lattice = first.lattice().clone();
    let meet = members
        .iter()
        .fold(lattice.strict_order(), |acc, f| acc.intersection(f.right()));
    let join = members
        .iter()
        .fold(Relation::empty(lattice.size()), |acc, f| acc.union(f.right()));
    let lower = from_transfer(&TransferSystem::new(lattice.clone(), meet)?);
    let upper = from_transfer(&generate(&lattice, &join)?);
    let in_interval = universe.iter().filter(|f| lower.le(f) && f.le(&upper)).count();
    let is_interval = in_interval == members.len()
        && members.iter().all(|f| lower.le(f) && f.le(&upper))
        && members.contains(&lower)
        && members.contains(&upper);
    Ok(Fiber {
        which,
        operator,
        members,
        lower,
        upper,
        is_interval,
    })
}

/// All fibers of `which` over `universe`, ordered by operator table.
pub fn fibers(universe: &[FactorizationSystem], which: Which) -> Result<Vec<Fiber>> {
    let mut groups: BTreeMap<Vec<usize>, (Endo, Vec<FactorizationSystem>)> = BTreeMap::new();
    for fs in universe {
        let op = which.apply(fs)?;
        groups
            .entry(op.table.clone())
            .or_insert_with(|| (op, Vec::new()))
            .1
            .push(fs.clone());
    }
    groups
        .into_values()
        .map(|(op, members)| build_fiber(universe, which, op, members))
        .collect()
}

/// The fiber over a single operator.
pub fn fiber(universe: &[FactorizationSystem], which: Which, operator: &Endo) -> Result<Fiber> {
    let mut members = Vec::new();
    for fs in universe {
        if which.apply(fs)? == *operator {
            members.push(fs.clone());
        }
    }
    build_fiber(universe, which, operator.clone(), members)
}

fn is_meet_submonoid(lattice: &Lattice, set: ElemSet) -> bool {
    set.contains(lattice.top()) && set.iter().all(|x| set.iter().all(|y| set.contains(lattice.meet(x, y))))
}

fn is_join_submonoid(lattice: &Lattice, set: ElemSet) -> bool {
    set.contains(lattice.bottom()) && set.iter().all(|x| set.iter().all(|y| set.contains(lattice.join(x, y))))
}

/// `f_A(x) = min{y ∈ A : x <= y}` for a meet-submonoid `A`.
pub fn closure_from_submonoid(lattice: &Arc<Lattice>, members: ElemSet) -> Result<Endo> {
    if members.0 & !lattice.all().0 != 0 || !is_meet_submonoid(lattice, members) {
        return Err(Error::NotASubmonoid);
    }
    let table = lattice
        .elements()
        .map(|x| min_of(lattice, ElemSet(members.0 & lattice.up_set(x).0), x))
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: lattice.clone(),
        table,
    })
}

/// `g_A(x) = max{y ∈ A : y <= x}` for a join-submonoid `A`.
pub fn interior_from_submonoid(lattice: &Arc<Lattice>, members: ElemSet) -> Result<Endo> {
    if members.0 & !lattice.all().0 != 0 || !is_join_submonoid(lattice, members) {
        return Err(Error::NotASubmonoid);
    }
    let table = lattice
        .elements()
        .map(|x| max_of(lattice, ElemSet(members.0 & lattice.down_set(x).0), x))
        .collect::<Result<_>>()?;
    Ok(Endo {
        lattice: lattice.clone(),
        table,
    })
}

/// `{x : f(x) = x}` of an idempotent map.
pub fn fixed_points(f: &Endo) -> Result<ElemSet> {
    if let Some(x) = f.lattice.elements().find(|&x| f.apply(f.apply(x)) != f.apply(x)) {
        return Err(Error::NotIdempotent(x));
    }
    Ok(f.lattice.elements().filter(|&x| f.apply(x) == x).collect())
}

/// Checks `χ(F) = λ(F^op)` and `λ(F) = χ(F^op)` under the element
/// identification with the dual lattice.
pub fn verify_duality(fs: &FactorizationSystem) -> bool {
    let dual = Arc::new(fs.lattice().dual());
    let fs_op = fs.dual_on(&dual);
    let (Ok(c), Ok(l), Ok(c_op), Ok(l_op)) = (chi(fs), lambda(fs), chi(&fs_op), lambda(&fs_op)) else {
        return false;
    };
    c.dual_on(&dual).table == l_op.table && l.dual_on(&dual).table == c_op.table
}

/// `admissible(lattice, x, y, table)` for [`search_extensive_maps`].
pub(crate) type Admissible = dyn Fn(&Lattice, usize, usize, &[usize]) -> bool;

/// Depth-first search over extensive monotone maps, assigning images from
/// the top element downwards. `admissible(lattice, x, y, table)` decides
/// whether `x ↦ y` may extend the partial table, in which every element
/// above `x` in index order is already assigned.
pub(crate) fn search_extensive_maps(
    lattice: &Lattice,
    limit: usize,
    admissible: &Admissible,
) -> Result<Vec<Vec<usize>>> {
    fn go(
        lattice: &Lattice,
        x: usize,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
        admissible: &Admissible,
    ) -> Result<()> {
        let mut candidates = lattice.up_set(x).0;
        for z in lattice.up_set(x).iter().filter(|&z| z != x) {
            candidates &= lattice.down_set(table[z]).0;
        }
        for y in ElemSet(candidates).iter() {
            if !admissible(lattice, x, y, table) {
                continue;
            }
            table[x] = y;
            if x == 0 {
                if out.len() == limit {
                    return Err(Error::EnumerationLimitExceeded(limit));
                }
                out.push(table.clone());
            } else {
                go(lattice, x - 1, table, out, limit, admissible)?;
            }
        }
        table[x] = usize::MAX;
        Ok(())
    }
    let mut out = Vec::new();
    let mut table = vec![usize::MAX; lattice.size()];
    go(lattice, lattice.size() - 1, &mut table, &mut out, limit, admissible)?;
    out.sort();
    Ok(out)
}

/// Every closure operator, found by direct search rather than through
/// submonoids. Sorted by table.
pub fn enumerate_closure_operators(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<Endo>> {
    // x ↦ y is idempotent-compatible when y = x or y is already fixed.
    let tables = search_extensive_maps(lattice, limit, &|_, x, y, table| y == x || table[y] == y)?;
    Ok(tables
        .into_iter()
        .map(|table| Endo {
            lattice: lattice.clone(),
            table,
        })
        .collect())
}

/// Every interior operator: closure operators of the dual lattice read back.
pub fn enumerate_interior_operators(lattice: &Arc<Lattice>, limit: usize) -> Result<Vec<Endo>> {
    let dual = Arc::new(lattice.dual());
    let mut out: Vec<Endo> = enumerate_closure_operators(&dual, limit)?
        .iter()
        .map(|c| c.dual_on(lattice))
        .collect();
    out.sort_by(|a, b| a.table.cmp(&b.table));
    Ok(out)
}
