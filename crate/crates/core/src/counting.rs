//! Stirling and poly-Bernoulli numbers, and count reports reconciling
//! closed forms with exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cochar::{self, enumerate_closure_operators, enumerate_interior_operators};
use crate::crypto::{
    enumerate_comonads, enumerate_monads, enumerate_submonoids, is_model_structure, ModelStructure, MonoidOp,
};
use crate::error::{Error, Result};
use crate::factorization::{from_transfer, FactorizationSystem};
use crate::lattice::{Lattice, Standard};
use crate::transfer::{enumerate_saturated, enumerate_transfer};

static STIRLING: OnceLock<RwLock<Vec<Vec<BigUint>>>> = OnceLock::new();

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// nonempty blocks. Rows are memoized and shared across threads.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let cache = STIRLING.get_or_init(|| RwLock::new(vec![vec![BigUint::one()]]));
    {
        let rows = cache.read().expect("stirling cache poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = cache.write().expect("stirling cache poisoned");
    while rows.len() <= n {
        let prev = rows.last().unwrap();
        let m = rows.len();
        let mut row = vec![BigUint::zero(); m + 1];
        for j in 1..=m {
            // S(m, j) = j S(m-1, j) + S(m-1, j-1)
            let stay = if j < prev.len() { &prev[j] * j } else { BigUint::zero() };
            row[j] = stay + &prev[j - 1];
        }
        rows.push(row);
    }
    rows[n][k].clone()
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `B_{a,b} = Σ_k (k!)² S(a+1, k+1) S(b+1, k+1)` for `a, b >= 1`.
pub fn poly_bernoulli(a: usize, b: usize) -> Result<BigUint> {
    if a == 0 || b == 0 {
        return Err(Error::BadIndex(a, b));
    }
    let mut sum = BigUint::zero();
    for k in 0..=a.min(b) {
        let f = factorial(k);
        sum += &f * &f * stirling2(a + 1, k + 1) * stirling2(b + 1, k + 1);
    }
    Ok(sum)
}

/// `½ B_{m+1,n+1}`, the number of saturated transfer systems (equivalently
/// join-submonoids) on `grid(m, n)`. With `check`, both are also counted by
/// enumeration and must agree with the formula.
pub fn count_saturated_grid(m: usize, n: usize, check: bool, limit: usize) -> Result<BigUint> {
    let formula = poly_bernoulli(m + 1, n + 1)? >> 1;
    if check {
        let lattice = Arc::new(Standard::Grid(m, n).build()?);
        let saturated = BigUint::from(enumerate_saturated(&lattice, limit)?.len());
        let submonoids = BigUint::from(enumerate_submonoids(&lattice, MonoidOp::Join, limit)?.len());
        for (what, value) in [
            ("saturated transfer systems", &saturated),
            ("join-submonoids", &submonoids),
        ] {
            if *value != formula {
                return Err(Error::CountMismatch {
                    what: format!("{what} on grid({m},{n})"),
                    left: value.to_string(),
                    right: formula.to_string(),
                });
            }
        }
    }
    Ok(formula)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    Transfer,
    Saturated,
    Disklike,
    Reflective,
    Coreflective,
    Closure,
    Interior,
    SubmonoidMeet,
    SubmonoidJoin,
    Monad,
    Comonad,
    FibrantModel,
    CofibrantModel,
    LambdaImage,
    ChiImage,
}

impl StructureKind {
    /// Kinds in bijection with reflective factorization systems.
    pub const REFLECTIVE_SIDE: [StructureKind; 7] = [
        StructureKind::Reflective,
        StructureKind::Disklike,
        StructureKind::SubmonoidMeet,
        StructureKind::Closure,
        StructureKind::Monad,
        StructureKind::CofibrantModel,
        StructureKind::LambdaImage,
    ];

    /// Kinds in bijection with coreflective factorization systems.
    pub const COREFLECTIVE_SIDE: [StructureKind; 7] = [
        StructureKind::Coreflective,
        StructureKind::Saturated,
        StructureKind::SubmonoidJoin,
        StructureKind::Interior,
        StructureKind::Comonad,
        StructureKind::FibrantModel,
        StructureKind::ChiImage,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Transfer => "transfer",
            StructureKind::Saturated => "saturated",
            StructureKind::Disklike => "disklike",
            StructureKind::Reflective => "reflective",
            StructureKind::Coreflective => "coreflective",
            StructureKind::Closure => "closure",
            StructureKind::Interior => "interior",
            StructureKind::SubmonoidMeet => "submonoid-meet",
            StructureKind::SubmonoidJoin => "submonoid-join",
            StructureKind::Monad => "monad",
            StructureKind::Comonad => "comonad",
            StructureKind::FibrantModel => "fibrant-model",
            StructureKind::CofibrantModel => "cofibrant-model",
            StructureKind::LambdaImage => "lambda-image",
            StructureKind::ChiImage => "chi-image",
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    Enumeration,
    BothAgree,
}

fn as_decimal<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub lattice: String,
    pub counts: BTreeMap<StructureKind, CountEntry>,
}

impl CountReport {
    pub fn get(&self, kind: StructureKind) -> Option<&BigUint> {
        self.counts.get(&kind).map(|e| &e.value)
    }

    /// Aligned two-column text table.
    pub fn to_table(&self) -> String {
        let width = self.counts.keys().map(|k| k.name().len()).max().unwrap_or(0);
        let mut out = format!("lattice: {}\n", self.lattice);
        for (kind, entry) in &self.counts {
            let prov = match entry.provenance {
                Provenance::Formula => "formula",
                Provenance::Enumeration => "enumeration",
                Provenance::BothAgree => "both-agree",
            };
            out.push_str(&format!(
                "{:<width$}  {:>12}  {}\n",
                kind.name(),
                entry.value.to_string(),
                prov
            ));
        }
        out
    }
}

/// The formula value on grids (chains are grids with one side zero).
fn grid_formula(lattice: &Lattice) -> Option<BigUint> {
    let (m, n) = match lattice.shape()? {
        Standard::Grid(m, n) => (m, n),
        Standard::Chain(n) => (n, 0),
        _ => return None,
    };
    poly_bernoulli(m + 1, n + 1).ok().map(|b| b >> 1)
}

/// Counts every structure kind on `lattice` by enumeration, cross-checks
/// grid counts against the poly-Bernoulli formula, and checks that all
/// counts on each side of the reflective/coreflective web agree.
pub fn count_report(lattice: &Arc<Lattice>, limit: usize) -> Result<CountReport> {
    let transfer = enumerate_transfer(lattice, limit)?;
    let universe: Vec<FactorizationSystem> = transfer.par_iter().map(from_transfer).collect();

    struct PerSystem {
        reflective: bool,
        coreflective: bool,
        fibrant: bool,
        cofibrant: bool,
        lambda: Vec<usize>,
        chi: Vec<usize>,
    }
    let per: Vec<PerSystem> = universe
        .par_iter()
        .map(|fs| -> Result<PerSystem> {
            let all = || FactorizationSystem::identities_all(fs.lattice().clone());
            let none = || FactorizationSystem::all_identities(fs.lattice().clone());
            Ok(PerSystem {
                reflective: fs.is_reflective(),
                coreflective: fs.is_coreflective(),
                fibrant: is_model_structure(&ModelStructure::candidate(fs.clone(), all())?)?,
                cofibrant: is_model_structure(&ModelStructure::candidate(none(), fs.clone())?)?,
                lambda: cochar::lambda(fs)?.table().to_vec(),
                chi: cochar::chi(fs)?.table().to_vec(),
            })
        })
        .collect::<Result<_>>()?;

    let count = |f: &dyn Fn(&PerSystem) -> bool| per.iter().filter(|p| f(p)).count();
    let mut raw: Vec<(StructureKind, usize)> = vec![
        (StructureKind::Transfer, transfer.len()),
        (
            StructureKind::Saturated,
            transfer.iter().filter(|r| r.is_saturated()).count(),
        ),
        (
            StructureKind::Disklike,
            transfer.iter().filter(|r| r.is_disklike()).count(),
        ),
        (StructureKind::Reflective, count(&|p| p.reflective)),
        (StructureKind::Coreflective, count(&|p| p.coreflective)),
        (StructureKind::FibrantModel, count(&|p| p.fibrant)),
        (StructureKind::CofibrantModel, count(&|p| p.cofibrant)),
        (
            StructureKind::LambdaImage,
            per.iter().map(|p| &p.lambda).collect::<BTreeSet<_>>().len(),
        ),
        (
            StructureKind::ChiImage,
            per.iter().map(|p| &p.chi).collect::<BTreeSet<_>>().len(),
        ),
    ];
    raw.push((
        StructureKind::Closure,
        enumerate_closure_operators(lattice, limit)?.len(),
    ));
    raw.push((
        StructureKind::Interior,
        enumerate_interior_operators(lattice, limit)?.len(),
    ));
    raw.push((StructureKind::Monad, enumerate_monads(lattice, limit)?.len()));
    raw.push((StructureKind::Comonad, enumerate_comonads(lattice, limit)?.len()));
    raw.push((
        StructureKind::SubmonoidMeet,
        enumerate_submonoids(lattice, MonoidOp::Meet, limit)?.len(),
    ));
    raw.push((
        StructureKind::SubmonoidJoin,
        enumerate_submonoids(lattice, MonoidOp::Join, limit)?.len(),
    ));

    let formula = grid_formula(lattice);
    let mut counts = BTreeMap::new();
    for (kind, value) in raw {
        let value = BigUint::from(value);
        let provenance = match (&formula, kind) {
            (Some(f), StructureKind::Saturated | StructureKind::SubmonoidJoin) => {
                if *f != value {
                    return Err(Error::CountMismatch {
                        what: format!("{kind} on {} against ½B", lattice.name()),
                        left: value.to_string(),
                        right: f.to_string(),
                    });
                }
                Provenance::BothAgree
            }
            _ => Provenance::Enumeration,
        };
        counts.insert(kind, CountEntry { value, provenance });
    }

    for side in [StructureKind::REFLECTIVE_SIDE, StructureKind::COREFLECTIVE_SIDE] {
        let first = &counts[&side[0]].value;
        if let Some(kind) = side.iter().find(|k| counts[k].value != *first) {
            return Err(Error::CountMismatch {
                what: format!("{} vs {} on {}", side[0], kind, lattice.name()),
                left: first.to_string(),
                right: counts[kind].value.to_string(),
            });
        }
    }
    Ok(CountReport {
        lattice: lattice.name().to_string(),
        counts,
    })
}
