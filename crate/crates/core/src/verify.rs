//! Exhaustive verification suites.
//!
//! Each suite enumerates the relevant universes on one lattice and checks a
//! correspondence element by element. Checks run in parallel but results are
//! collected in enumeration order, so reports are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bits::ElemSet;
use crate::cochar::{
    classify, closure_from_submonoid, enumerate_closure_operators, enumerate_interior_operators, fibers, fixed_points,
    interior_from_submonoid, verify_duality, Which,
};
use crate::counting::count_saturated_grid;
use crate::crypto::{
    enumerate_comonads, enumerate_monads, enumerate_submonoids, fac_to_submonoid, galois_check, is_comonad,
    is_model_structure, is_monad, make_cofibrant, make_fibrant, submonoid_to_fac, ModelStructure, MonoidOp, Sidedness,
};
use crate::error::{Error, Result};
use crate::factorization::{enumerate_fac, from_transfer, to_transfer, validate_fs, FactorizationSystem};
use crate::io::{pairs_of, EndoRecord, FsRecord, LatticeRecord, ModelRecord, SubmonoidRecord, FORMAT_VERSION};
use crate::lattice::{Lattice, Standard};
use crate::transfer::{
    cover_of, enumerate_saturated, enumerate_saturated_covers, enumerate_transfer, ts_of, TransferSystem,
};

/// Counterexamples kept per report; further failures are only counted.
const MAX_COUNTEREXAMPLES: usize = 16;

/// Subset × system pairs tried exhaustively by the adjunction check before
/// falling back to submonoids and singletons.
const GALOIS_BUDGET: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Fooqw,
    Fibers,
    Refdisk,
    SatdiskDuality,
    Matchstick,
    Clsubmon,
    Submonoid,
    Monad,
    Model,
    Polybernoulli,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Fooqw,
        Suite::Fibers,
        Suite::Refdisk,
        Suite::SatdiskDuality,
        Suite::Matchstick,
        Suite::Clsubmon,
        Suite::Submonoid,
        Suite::Monad,
        Suite::Model,
        Suite::Polybernoulli,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fooqw => "fooqw",
            Suite::Fibers => "fibers",
            Suite::Refdisk => "refdisk",
            Suite::SatdiskDuality => "satdisk-duality",
            Suite::Matchstick => "matchstick",
            Suite::Clsubmon => "clsubmon",
            Suite::Submonoid => "submonoid",
            Suite::Monad => "monad",
            Suite::Model => "model",
            Suite::Polybernoulli => "polybernoulli",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Fooqw => "factorization systems and transfer systems are isomorphic posets",
            Suite::Fibers => "fibers of lambda and chi are intervals with special extreme points",
            Suite::Refdisk => "reflective systems correspond to disklike transfer systems",
            Suite::SatdiskDuality => "coreflective systems correspond to saturated transfer systems",
            Suite::Matchstick => "saturated transfer systems correspond to saturated covers",
            Suite::Clsubmon => "closure operators correspond to meet-submonoids",
            Suite::Submonoid => "reflective systems correspond to meet-submonoids via an adjunction",
            Suite::Monad => "monads are closure operators and comonads interior operators",
            Suite::Model => "fibrant and cofibrant model structures match (co)reflective systems",
            Suite::Polybernoulli => "saturated systems on grids are counted by half a poly-Bernoulli number",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub condition: String,
    pub lattice: LatticeRecord,
    pub structure: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub format_version: &'static str,
    pub suite: Suite,
    pub lattice: String,
    pub universe: BTreeMap<String, usize>,
    pub checks: usize,
    pub failed: usize,
    pub passed: bool,
    pub summary: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {} on {}: {}\n",
            self.suite,
            self.lattice,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for (name, size) in &self.universe {
            out.push_str(&format!("  universe {name}: {size}\n"));
        }
        out.push_str(&format!(
            "  checks: {} passed, {} failed\n",
            self.checks - self.failed,
            self.failed
        ));
        for line in &self.summary {
            out.push_str(&format!("  {line}\n"));
        }
        for c in &self.counterexamples {
            out.push_str(&format!("  counterexample: {} {}\n", c.condition, c.structure));
        }
        out
    }
}

/// A failed check before the lattice is attached.
type Failure = (String, Value);

struct Checker {
    lattice: Arc<Lattice>,
    universe: BTreeMap<String, usize>,
    checks: usize,
    failed: usize,
    summary: Vec<String>,
    counterexamples: Vec<Counterexample>,
}

impl Checker {
    fn new(lattice: &Arc<Lattice>) -> Self {
        Checker {
            lattice: lattice.clone(),
            universe: BTreeMap::new(),
            checks: 0,
            failed: 0,
            summary: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn universe(&mut self, name: &str, size: usize) {
        self.universe.insert(name.to_string(), size);
    }

    fn record(&mut self, failure: Option<Failure>) {
        self.checks += 1;
        if let Some((condition, structure)) = failure {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample {
                    condition,
                    lattice: LatticeRecord::from_lattice(&self.lattice),
                    structure,
                });
            }
        }
    }

    fn check(&mut self, ok: bool, condition: impl FnOnce() -> String, structure: impl FnOnce() -> Value) {
        self.record((!ok).then(|| (condition(), structure())));
    }

    fn equal<T: PartialEq + fmt::Debug>(&mut self, what: &str, left: T, right: T) {
        self.check(
            left == right,
            || format!("{what}: {left:?} != {right:?}"),
            || Value::Null,
        );
    }

    /// Runs `f` over `items` in parallel, recording results in order.
    fn each<T: Sync>(&mut self, items: &[T], f: impl Fn(&T) -> Option<Failure> + Sync + Send) {
        let results: Vec<Option<Failure>> = items.par_iter().map(f).collect();
        for r in results {
            self.record(r);
        }
    }

    fn finish(self, suite: Suite) -> VerifyReport {
        VerifyReport {
            format_version: FORMAT_VERSION,
            suite,
            lattice: self.lattice.name().to_string(),
            universe: self.universe,
            checks: self.checks,
            failed: self.failed,
            passed: self.failed == 0,
            summary: self.summary,
            counterexamples: self.counterexamples,
        }
    }
}

fn fail_if(bad: bool, condition: impl FnOnce() -> String, structure: impl FnOnce() -> Value) -> Option<Failure> {
    bad.then(|| (condition(), structure()))
}

fn fs_json(fs: &FactorizationSystem) -> Value {
    serde_json::to_value(FsRecord::from_fs(fs)).expect("serializable")
}

fn ts_json(t: &TransferSystem) -> Value {
    json!({ "pairs": pairs_of(t.relation()) })
}

/// Grid parameters for the poly-Bernoulli suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub m: Option<usize>,
    pub n: Option<usize>,
}

/// Runs one suite. `lattice` is ignored by `polybernoulli` when both grid
/// parameters are given.
pub fn run_suite(suite: Suite, lattice: &Arc<Lattice>, params: SuiteParams, limit: usize) -> Result<VerifyReport> {
    let lattice = match (suite, params.m, params.n) {
        (Suite::Polybernoulli, Some(m), Some(n)) => Arc::new(Standard::Grid(m, n).build()?),
        _ => lattice.clone(),
    };
    let mut c = Checker::new(&lattice);
    match suite {
        Suite::Fooqw => fooqw(&mut c, limit)?,
        Suite::Fibers => fiber_suite(&mut c, limit)?,
        Suite::Refdisk => refdisk(&mut c, limit)?,
        Suite::SatdiskDuality => satdisk_duality(&mut c, limit)?,
        Suite::Matchstick => matchstick(&mut c, limit)?,
        Suite::Clsubmon => clsubmon(&mut c, limit)?,
        Suite::Submonoid => submonoid(&mut c, limit)?,
        Suite::Monad => monad(&mut c, limit)?,
        Suite::Model => model(&mut c, limit)?,
        Suite::Polybernoulli => polybernoulli(&mut c, limit)?,
    }
    Ok(c.finish(suite))
}

fn fooqw(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let transfer = enumerate_transfer(&lat, limit)?;
    let fac: Vec<FactorizationSystem> = transfer.par_iter().map(from_transfer).collect();
    c.universe("transfer", transfer.len());
    c.universe("fac", fac.len());

    let pairs: Vec<usize> = (0..transfer.len()).collect();
    c.each(&pairs, |&i| {
        let (t, fs) = (&transfer[i], &fac[i]);
        match validate_fs(&lat, fs.left(), fs.right()) {
            Ok(None) => {}
            Ok(Some(v)) => return Some((format!("not a factorization system: {v}"), fs_json(fs))),
            Err(e) => return Some((e.to_string(), fs_json(fs))),
        }
        fail_if(
            to_transfer(fs) != *t,
            || "round trip changes the system".into(),
            || ts_json(t),
        )
    });
    // Order: R ⊆ R' iff F <= F', and the left classes shrink.
    c.each(&pairs, |&i| {
        (0..transfer.len()).find_map(|j| {
            let sub = transfer[i].is_subsystem_of(&transfer[j]);
            let le = fac[i].le(&fac[j]);
            let left = fac[j].left().is_subset(fac[i].left());
            fail_if(
                sub != le || le != left,
                || format!("order not preserved between systems {i} and {j}"),
                || json!({ "first": ts_json(&transfer[i]), "second": ts_json(&transfer[j]) }),
            )
        })
    });
    c.summary.push(format!("{} systems round-trip", transfer.len()));
    Ok(())
}

fn fiber_suite(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let universe = enumerate_fac(&lat, limit)?;
    c.universe("fac", universe.len());
    let meet = enumerate_submonoids(&lat, MonoidOp::Meet, limit)?;
    let join = enumerate_submonoids(&lat, MonoidOp::Join, limit)?;
    c.universe("submonoid-meet", meet.len());
    c.universe("submonoid-join", join.len());

    for which in [Which::Lambda, Which::Chi] {
        let (symbol, special) = match which {
            Which::Lambda => ("λ", "reflective"),
            Which::Chi => ("χ", "coreflective"),
        };
        let fibers = fibers(&universe, which)?;
        c.universe(&format!("{symbol}-fibers"), fibers.len());

        let mut intervals = 0;
        for f in &fibers {
            intervals += usize::from(f.is_interval);
            let op = || json!({ "operator": f.operator.table() });
            c.check(f.is_interval, || format!("{symbol}-fiber is not an interval"), op);
            c.check(
                f.distinguished_is_special(),
                || format!("{symbol}-fiber extreme point is not {special}"),
                op,
            );
            let class = classify(&f.operator)?;
            let ok = match which {
                Which::Lambda => class.is_closure(),
                Which::Chi => class.is_interior(),
            };
            c.check(ok, || format!("{symbol} value has the wrong operator class"), op);
        }

        // Extreme points are exactly the special systems.
        let extremes: BTreeSet<_> = fibers.iter().map(|f| f.distinguished().right().clone()).collect();
        let specials: BTreeSet<_> = universe
            .iter()
            .filter(|fs| match which {
                Which::Lambda => fs.is_reflective(),
                Which::Chi => fs.is_coreflective(),
            })
            .map(|fs| fs.right().clone())
            .collect();
        c.equal(
            &format!("{symbol}-fiber extremes vs {special} systems"),
            extremes.len(),
            specials.len(),
        );
        c.check(
            extremes == specials,
            || format!("{symbol}-fiber extremes differ from {special} systems"),
            || Value::Null,
        );

        // The image is the set of operators coming from submonoids.
        let image: BTreeSet<Vec<usize>> = fibers.iter().map(|f| f.operator.table().to_vec()).collect();
        let from_submonoids = match which {
            Which::Lambda => meet
                .iter()
                .map(|s| closure_from_submonoid(&lat, s.members()).map(|e| e.table().to_vec()))
                .collect::<Result<BTreeSet<_>>>()?,
            Which::Chi => join
                .iter()
                .map(|s| interior_from_submonoid(&lat, s.members()).map(|e| e.table().to_vec()))
                .collect::<Result<BTreeSet<_>>>()?,
        };
        c.check(
            image == from_submonoids,
            || format!("image of {symbol} differs from the submonoid operators"),
            || json!({ "image": image.len(), "submonoid_operators": from_submonoids.len() }),
        );

        // Meets and joins of fiber members stay in the fiber.
        for f in &fibers {
            let members: Vec<TransferSystem> = f.members.iter().map(to_transfer).collect();
            c.each(&members, |a| {
                members.iter().find_map(|b| {
                    let m = from_transfer(&crate::transfer::ts_meet(a, b).ok()?);
                    let j = from_transfer(&crate::transfer::ts_join(a, b).ok()?);
                    let same = |x: &FactorizationSystem| which.apply(x).map(|e| e == f.operator).unwrap_or(false);
                    fail_if(
                        !(same(&m) && same(&j)),
                        || format!("{symbol}-fiber not closed under meet and join"),
                        || json!({ "first": ts_json(a), "second": ts_json(b) }),
                    )
                })
            });
        }
        let all = if intervals == fibers.len() {
            "all intervals".to_string()
        } else {
            format!("{} not intervals", fibers.len() - intervals)
        };
        c.summary.push(format!("{} {symbol}-fibers, {all}", fibers.len()));
    }
    c.each(&universe, |fs| {
        fail_if(!verify_duality(fs), || "χ and λ are not dual".into(), || fs_json(fs))
    });
    Ok(())
}

fn refdisk(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let transfer = enumerate_transfer(&lat, limit)?;
    c.universe("transfer", transfer.len());
    c.each(&transfer, |t| {
        let reflective = from_transfer(t).is_reflective();
        fail_if(
            reflective != t.is_disklike(),
            || format!("reflective = {reflective} but disklike = {}", t.is_disklike()),
            || ts_json(t),
        )
    });
    let reflective = transfer.iter().filter(|t| from_transfer(t).is_reflective()).count();
    let disklike = transfer.iter().filter(|t| t.is_disklike()).count();
    c.universe("reflective", reflective);
    c.universe("disklike", disklike);
    c.equal("reflective vs disklike count", reflective, disklike);
    c.summary.push(format!("{reflective} reflective ↔ {disklike} disklike"));
    Ok(())
}

fn satdisk_duality(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let dual = Arc::new(lat.dual());
    let transfer = enumerate_transfer(&lat, limit)?;
    c.universe("transfer", transfer.len());
    c.each(&transfer, |t| {
        let fs = from_transfer(t);
        let coreflective = fs.is_coreflective();
        let disklike_op = to_transfer(&fs.dual_on(&dual)).is_disklike();
        fail_if(
            t.is_saturated() != coreflective || coreflective != disklike_op,
            || {
                format!(
                    "saturated = {}, coreflective = {coreflective}, disklike on the dual = {disklike_op}",
                    t.is_saturated()
                )
            },
            || ts_json(t),
        )
    });
    let saturated = enumerate_saturated(&lat, limit)?.len();
    let disklike_op = enumerate_transfer(&dual, limit)?
        .iter()
        .filter(|t| t.is_disklike())
        .count();
    c.universe("saturated", saturated);
    c.universe("disklike-dual", disklike_op);
    c.equal("saturated vs disklike on the dual", saturated, disklike_op);
    c.summary
        .push(format!("{saturated} saturated ↔ {disklike_op} disklike on the dual"));
    Ok(())
}

fn matchstick(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    if !lat.is_modular() {
        return Err(Error::NotModular);
    }
    let saturated = enumerate_saturated(&lat, limit)?;
    let covers = enumerate_saturated_covers(&lat, limit)?;
    c.universe("saturated", saturated.len());
    c.universe("saturated-covers", covers.len());
    c.equal("saturated vs cover count", saturated.len(), covers.len());
    c.each(&saturated, |t| {
        let back = cover_of(t).and_then(|q| ts_of(&q));
        fail_if(
            back.as_ref().ok() != Some(t),
            || "ts_of ∘ cover_of is not the identity".into(),
            || ts_json(t),
        )
    });
    c.each(&covers, |q| {
        let back = ts_of(q).and_then(|t| cover_of(&t));
        fail_if(
            back.as_ref().map(|b| b.covers()).ok() != Some(q.covers()),
            || "cover_of ∘ ts_of is not the identity".into(),
            || json!({ "covers": pairs_of(q.covers()) }),
        )
    });
    c.summary
        .push(format!("{} ↔ {} bijection", saturated.len(), covers.len()));
    Ok(())
}

fn clsubmon(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    for (op, kind) in [(MonoidOp::Meet, "closure"), (MonoidOp::Join, "interior")] {
        let submonoids = enumerate_submonoids(&lat, op, limit)?;
        let direct = match op {
            MonoidOp::Meet => enumerate_closure_operators(&lat, limit)?,
            MonoidOp::Join => enumerate_interior_operators(&lat, limit)?,
        };
        c.universe(&format!("submonoid-{op}"), submonoids.len());
        c.universe(kind, direct.len());
        let mut image = BTreeSet::new();
        for s in &submonoids {
            let f = match op {
                MonoidOp::Meet => closure_from_submonoid(&lat, s.members())?,
                MonoidOp::Join => interior_from_submonoid(&lat, s.members())?,
            };
            let class = classify(&f)?;
            let right_class = if op == MonoidOp::Meet {
                class.is_closure()
            } else {
                class.is_interior()
            };
            let fixed = fixed_points(&f)?;
            c.check(
                right_class && fixed == s.members(),
                || format!("operator of a {op}-submonoid is not a {kind} operator fixing it"),
                || json!({ "submonoid": SubmonoidRecord::from_submonoid(s), "operator": EndoRecord::from_endo(&f) }),
            );
            image.insert(f.table().to_vec());
        }
        let direct: BTreeSet<Vec<usize>> = direct.iter().map(|f| f.table().to_vec()).collect();
        c.equal(
            &format!("{kind} operators from submonoids vs direct search"),
            image.len(),
            direct.len(),
        );
        c.check(
            image == direct,
            || format!("{kind} operator sets differ"),
            || Value::Null,
        );
        c.summary.push(format!(
            "{} {op}-submonoids ↔ {} {kind} operators",
            submonoids.len(),
            direct.len()
        ));
    }
    Ok(())
}

/// Subsets for the adjunction check: all of them when affordable.
fn galois_subsets(lat: &Lattice, systems: usize, limit: usize) -> Result<Vec<ElemSet>> {
    let n = lat.size();
    if n < 32 && (1usize << n).saturating_mul(systems) <= GALOIS_BUDGET {
        return Ok((0..1u64 << n).map(ElemSet).collect());
    }
    let arc = Arc::new(lat.clone());
    let mut sets: BTreeSet<ElemSet> = enumerate_submonoids(&arc, MonoidOp::Meet, limit)?
        .iter()
        .map(|s| s.members())
        .collect();
    sets.insert(ElemSet::EMPTY);
    for x in lat.elements() {
        sets.insert(ElemSet::singleton(x));
        for y in lat.elements() {
            sets.insert([x, y].into_iter().collect());
        }
    }
    Ok(sets.into_iter().collect())
}

fn submonoid(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let universe = enumerate_fac(&lat, limit)?;
    c.universe("fac", universe.len());
    for (op, side) in [
        (MonoidOp::Meet, Sidedness::Reflective),
        (MonoidOp::Join, Sidedness::Coreflective),
    ] {
        let submonoids = enumerate_submonoids(&lat, op, limit)?;
        let special: Vec<&FactorizationSystem> = universe
            .iter()
            .filter(|fs| match side {
                Sidedness::Reflective => fs.is_reflective(),
                Sidedness::Coreflective => fs.is_coreflective(),
            })
            .collect();
        let name = if side == Sidedness::Reflective {
            "reflective"
        } else {
            "coreflective"
        };
        c.universe(&format!("submonoid-{op}"), submonoids.len());
        c.universe(name, special.len());
        c.equal(
            &format!("{name} vs {op}-submonoid count"),
            special.len(),
            submonoids.len(),
        );
        c.each(&special, |fs| {
            let back = fac_to_submonoid(fs, side).map(|s| submonoid_to_fac(&s));
            fail_if(
                back.as_ref().ok() != Some(*fs),
                || format!("{name} system does not round-trip through its submonoid"),
                || fs_json(fs),
            )
        });
        c.each(&submonoids, |s| {
            let fs = submonoid_to_fac(s);
            let back = fac_to_submonoid(&fs, side).map(|t| t.members());
            fail_if(
                back.as_ref().ok() != Some(&s.members()),
                || format!("{op}-submonoid does not round-trip through its {name} system"),
                || serde_json::to_value(SubmonoidRecord::from_submonoid(s)).expect("serializable"),
            )
        });
    }
    // F(S) <= (L, R) iff S ⊆ R/1.
    let subsets = galois_subsets(&lat, universe.len(), limit)?;
    c.universe("galois-subsets", subsets.len());
    c.each(&subsets, |&s| {
        universe.iter().find_map(|fs| {
            fail_if(
                !galois_check(&lat, s, fs),
                || "adjunction F(S) <= F iff S ⊆ R/1 fails".into(),
                || json!({ "set": s.to_vec(), "system": fs_json(fs) }),
            )
        })
    });
    c.summary.push(format!(
        "adjunction checked on {} subsets × {} systems",
        subsets.len(),
        universe.len()
    ));
    Ok(())
}

fn monad(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let monads = enumerate_monads(&lat, limit)?;
    let comonads = enumerate_comonads(&lat, limit)?;
    let closures = enumerate_closure_operators(&lat, limit)?;
    let interiors = enumerate_interior_operators(&lat, limit)?;
    c.universe("monad", monads.len());
    c.universe("comonad", comonads.len());
    c.universe("closure", closures.len());
    c.universe("interior", interiors.len());
    let tables = |v: &[crate::cochar::Endo]| v.iter().map(|e| e.table().to_vec()).collect::<BTreeSet<_>>();
    c.check(
        tables(&monads) == tables(&closures),
        || "monads differ from closure operators".into(),
        || Value::Null,
    );
    c.check(
        tables(&comonads) == tables(&interiors),
        || "comonads differ from interior operators".into(),
        || Value::Null,
    );
    let endo = |e: &crate::cochar::Endo| serde_json::to_value(EndoRecord::from_endo(e)).expect("serializable");
    c.each(&closures, |f| {
        fail_if(
            !is_monad(&lat, f),
            || "closure operator is not a monad".into(),
            || endo(f),
        )
    });
    c.each(&interiors, |f| {
        fail_if(
            !is_comonad(&lat, f),
            || "interior operator is not a comonad".into(),
            || endo(f),
        )
    });
    c.each(&monads, |f| {
        fail_if(
            !classify(f).map(|k| k.is_closure()).unwrap_or(false),
            || "monad is not a closure operator".into(),
            || endo(f),
        )
    });
    c.summary.push(format!(
        "{} monads = {} closure operators",
        monads.len(),
        closures.len()
    ));
    Ok(())
}

fn model(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let universe = enumerate_fac(&lat, limit)?;
    c.universe("fac", universe.len());
    let top = FactorizationSystem::identities_all(lat.clone());
    let bottom = FactorizationSystem::all_identities(lat.clone());
    let verdicts: Vec<Result<(bool, bool)>> = universe
        .par_iter()
        .map(|fs| {
            let fibrant = is_model_structure(&ModelStructure::candidate(fs.clone(), top.clone())?)?;
            let cofibrant = is_model_structure(&ModelStructure::candidate(bottom.clone(), fs.clone())?)?;
            Ok((fibrant, cofibrant))
        })
        .collect();
    let verdicts = verdicts.into_iter().collect::<Result<Vec<_>>>()?;
    let (mut fibrant, mut cofibrant) = (0, 0);
    for (fs, &(f, cf)) in universe.iter().zip(&verdicts) {
        fibrant += usize::from(f);
        cofibrant += usize::from(cf);
        c.check(
            f == fs.is_coreflective(),
            || format!("fibrant model = {f} but coreflective = {}", fs.is_coreflective()),
            || fs_json(fs),
        );
        c.check(
            cf == fs.is_reflective(),
            || format!("cofibrant model = {cf} but reflective = {}", fs.is_reflective()),
            || fs_json(fs),
        );
        if let Ok(m) = make_fibrant(fs) {
            c.check(
                m.is_fibrant() && is_model_structure(&m)?,
                || "make_fibrant does not give a fibrant model structure".into(),
                || serde_json::to_value(ModelRecord::from_model(&m)).expect("serializable"),
            );
        }
        if let Ok(m) = make_cofibrant(fs) {
            c.check(
                m.is_cofibrant() && is_model_structure(&m)?,
                || "make_cofibrant does not give a cofibrant model structure".into(),
                || serde_json::to_value(ModelRecord::from_model(&m)).expect("serializable"),
            );
        }
    }
    c.universe("fibrant-model", fibrant);
    c.universe("cofibrant-model", cofibrant);
    c.summary.push(format!(
        "{fibrant} fibrant ↔ coreflective, {cofibrant} cofibrant ↔ reflective"
    ));
    Ok(())
}

fn polybernoulli(c: &mut Checker, limit: usize) -> Result<()> {
    let lat = c.lattice.clone();
    let Some(Standard::Grid(m, n)) = lat.shape() else {
        return Err(Error::BadParams {
            kind: "polybernoulli".into(),
            reason: "needs a grid lattice or --m/--n".into(),
        });
    };
    let formula = count_saturated_grid(m, n, false, limit)?;
    let saturated = enumerate_saturated(&lat, limit)?.len();
    let submonoids = enumerate_submonoids(&lat, MonoidOp::Join, limit)?.len();
    c.universe("saturated", saturated);
    c.universe("submonoid-join", submonoids);
    c.equal("saturated vs formula", saturated.to_string(), formula.to_string());
    c.equal(
        "join-submonoids vs formula",
        submonoids.to_string(),
        formula.to_string(),
    );
    c.summary.push(format!("formula {formula} = enumeration {saturated}"));
    Ok(())
}
