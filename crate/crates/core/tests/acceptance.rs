//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout:
//! `cargo test -p latfac --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use latfac::cochar::{self, enumerate_closure_operators, fibers, verify_duality, Which};
use latfac::counting::{count_report, count_saturated_grid, StructureKind};
use latfac::crypto::{enumerate_submonoids, galois_check, is_model_structure, is_monad, ModelStructure, MonoidOp};
use latfac::factorization::{enumerate_fac, from_transfer, to_transfer, FactorizationSystem};
use latfac::lattice::labelled_lattices;
use latfac::transfer::{
    cover_of, enumerate_saturated, enumerate_saturated_covers, enumerate_transfer, ts_join, ts_meet, ts_of,
};
use latfac::verify::{run_suite, Suite, SuiteParams};
use latfac::{ElemSet, Lattice, Standard};

use common::*;

const LIMIT: usize = 1_000_000;

type Criterion = (&'static str, fn() -> String);

fn criterion_1() -> String {
    let mut grids = 0;
    for m in 0..=4 {
        for n in 0..=4 - m {
            let l = lat(Standard::Grid(m, n));
            let expected = poly_bernoulli(m + 1, n + 1) / 2;
            let saturated = enumerate_saturated(&l, LIMIT).unwrap();
            let joins = enumerate_submonoids(&l, MonoidOp::Join, LIMIT).unwrap();
            assert_eq!(saturated.len() as u128, expected, "saturated on grid({m},{n})");
            assert_eq!(joins.len() as u128, expected, "join-submonoids on grid({m},{n})");
            assert_eq!(
                count_saturated_grid(m, n, false, LIMIT).unwrap().to_string(),
                expected.to_string()
            );
            // Independent counts: submonoids by subset filtering, saturated
            // systems by filtering transfer systems with the naive 3-for-2.
            assert_eq!(brute_submonoids(&l, true).len() as u128, expected);
            let transfer: BTreeSet<Pairs> = if strict_pairs(&l).len() <= 16 {
                brute_transfer(&l)
            } else {
                enumerate_transfer(&l, LIMIT)
                    .unwrap()
                    .iter()
                    .map(|t| to_pairs(t.relation()))
                    .collect()
            };
            let naive = transfer
                .iter()
                .filter(|r| is_transfer(&l, r) && is_saturated(&l, r))
                .count();
            assert_eq!(naive as u128, expected, "naive saturated count on grid({m},{n})");
            let found: BTreeSet<Pairs> = saturated.iter().map(|t| to_pairs(t.relation())).collect();
            assert!(found.iter().all(|r| is_saturated(&l, r)));
            grids += 1;
        }
    }
    let values: BTreeSet<u128> = [(0, 0), (1, 0), (2, 0), (1, 1), (3, 0), (2, 1), (2, 2)]
        .iter()
        .map(|&(m, n)| poly_bernoulli(m + 1, n + 1) / 2)
        .collect();
    assert_eq!(values, BTreeSet::from([1, 2, 4, 7, 8, 23, 115]));
    format!("{grids} grids with m+n <= 4")
}

fn criterion_2() -> String {
    let mut systems = 0;
    for l in test_lattices() {
        let transfer = enumerate_transfer(&l, LIMIT).unwrap();
        let fac: Vec<FactorizationSystem> = transfer.iter().map(from_transfer).collect();
        for (t, fs) in transfer.iter().zip(&fac) {
            let r = to_pairs(t.relation());
            assert_eq!(to_transfer(fs), *t, "round trip on {}", l.name());
            assert_eq!(to_pairs(fs.left()), left_class(&l, &r), "left class on {}", l.name());
        }
        for (i, a) in transfer.iter().enumerate() {
            for (j, b) in transfer.iter().enumerate() {
                let sub = to_pairs(a.relation()).is_subset(&to_pairs(b.relation()));
                assert_eq!(fac[i].le(&fac[j]), sub, "order on {}", l.name());
                assert_eq!(to_pairs(fac[j].left()).is_subset(&to_pairs(fac[i].left())), sub);
            }
        }
        assert!(
            run_suite(Suite::Fooqw, &l, SuiteParams::default(), LIMIT)
                .unwrap()
                .passed
        );
        systems += transfer.len();
    }
    format!("{systems} systems on {} lattices", test_lattices().len())
}

/// Groups systems by an operator computed by the oracle and checks the
/// interval property against the library's fibers.
fn check_fibers(l: &Arc<Lattice>, which: Which) -> usize {
    let universe = enumerate_fac(l, LIMIT).unwrap();
    assert!(universe.len() <= 100_000);
    let rights: Vec<Pairs> = universe.iter().map(|f| to_pairs(f.right())).collect();
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, r) in rights.iter().enumerate() {
        let op = match which {
            Which::Lambda => lambda(l, r),
            Which::Chi => chi(l, r),
        };
        groups.entry(op).or_default().push(i);
    }

    // (a) the image is the set of operators of submonoids
    let image: BTreeSet<Vec<usize>> = groups.keys().cloned().collect();
    let from_submonoids: BTreeSet<Vec<usize>> = match which {
        Which::Lambda => brute_submonoids(l, false)
            .into_iter()
            .map(|s| closure_of(l, s))
            .collect(),
        Which::Chi => brute_submonoids(l, true)
            .into_iter()
            .map(|s| interior_of(l, s))
            .collect(),
    };
    assert_eq!(image, from_submonoids, "image on {}", l.name());
    if which == Which::Lambda {
        let direct: BTreeSet<Vec<usize>> = enumerate_closure_operators(l, LIMIT)
            .unwrap()
            .iter()
            .map(|e| e.table().to_vec())
            .collect();
        assert_eq!(image, direct);
    }

    // (b) every fiber is the interval between its least and greatest member
    let mut extremes = BTreeSet::new();
    for members in groups.values() {
        let least = members
            .iter()
            .find(|&&i| members.iter().all(|&j| rights[i].is_subset(&rights[j])));
        let greatest = members
            .iter()
            .find(|&&i| members.iter().all(|&j| rights[j].is_subset(&rights[i])));
        let (lo, hi) = (*least.expect("least member"), *greatest.expect("greatest member"));
        let interval: BTreeSet<usize> = (0..rights.len())
            .filter(|&k| rights[lo].is_subset(&rights[k]) && rights[k].is_subset(&rights[hi]))
            .collect();
        assert_eq!(interval, members.iter().copied().collect(), "fiber on {}", l.name());
        extremes.insert(if which == Which::Lambda { lo } else { hi });
    }

    // (c) extreme points are exactly the reflective (disklike) or
    // coreflective (saturated) systems
    let special: BTreeSet<usize> = (0..rights.len())
        .filter(|&i| match which {
            Which::Lambda => is_disklike(l, &rights[i]),
            Which::Chi => is_saturated(l, &rights[i]),
        })
        .collect();
    assert_eq!(extremes, special, "fiber extremes on {}", l.name());

    let lib = fibers(&universe, which).unwrap();
    assert_eq!(lib.len(), groups.len());
    assert!(lib.iter().all(|f| f.is_interval && f.distinguished_is_special()));
    groups.len()
}

fn criterion_3() -> String {
    let mut total = 0;
    for l in test_lattices() {
        total += check_fibers(&l, Which::Lambda) + check_fibers(&l, Which::Chi);
        assert!(
            run_suite(Suite::Fibers, &l, SuiteParams::default(), LIMIT)
                .unwrap()
                .passed
        );
    }
    format!("{total} fibers")
}

fn criterion_4() -> String {
    let mut lattices = test_lattices();
    lattices.push(lat(Standard::Grid(2, 2)));
    lattices.push(lat(Standard::Boolean(3)));
    for l in &lattices {
        let report = count_report(l, LIMIT).expect("web equalities");
        let dual = Arc::new(l.dual());
        let dual_report = count_report(&dual, LIMIT).unwrap();
        for side in [StructureKind::REFLECTIVE_SIDE, StructureKind::COREFLECTIVE_SIDE] {
            let values: BTreeSet<_> = side.iter().map(|&k| report.get(k).unwrap().clone()).collect();
            assert_eq!(values.len(), 1, "{} side counts on {}", side[0], l.name());
        }
        assert_eq!(
            report.get(StructureKind::Reflective),
            dual_report.get(StructureKind::Coreflective),
            "reflective on P vs coreflective on P^op for {}",
            l.name()
        );
        // Naive counts for the two sides.
        let transfer: Vec<Pairs> = enumerate_transfer(l, LIMIT)
            .unwrap()
            .iter()
            .map(|t| to_pairs(t.relation()))
            .collect();
        let disklike = transfer.iter().filter(|r| is_disklike(l, r)).count();
        let saturated = transfer.iter().filter(|r| is_saturated(l, r)).count();
        assert_eq!(
            report.get(StructureKind::Reflective).unwrap().to_string(),
            disklike.to_string()
        );
        assert_eq!(
            report.get(StructureKind::Coreflective).unwrap().to_string(),
            saturated.to_string()
        );
    }
    format!("{} lattices and their duals", lattices.len())
}

fn criterion_5() -> String {
    let mut lattices = Vec::new();
    for m in 0..=3 {
        for n in 0..=m {
            lattices.push(lat(Standard::Grid(m, n)));
        }
    }
    lattices.push(lat(Standard::Boolean(3)));
    lattices.push(lat(Standard::Diamond));
    let mut largest = 0;
    for l in &lattices {
        assert!(l.is_modular());
        let saturated = enumerate_saturated(l, LIMIT).unwrap();
        let covers = enumerate_saturated_covers(l, LIMIT).unwrap();
        assert_eq!(saturated.len(), covers.len(), "universe sizes on {}", l.name());
        let images: BTreeSet<_> = saturated
            .iter()
            .map(|t| {
                let q = cover_of(t).unwrap();
                assert_eq!(ts_of(&q).unwrap(), *t, "ts_of ∘ cover_of on {}", l.name());
                assert!(to_pairs(q.covers()).iter().all(|&(x, y)| l.covers(x, y)));
                q.covers().clone()
            })
            .collect();
        assert_eq!(images.len(), saturated.len(), "cover_of is injective");
        for q in &covers {
            let t = ts_of(q).unwrap();
            assert!(is_saturated(l, &to_pairs(t.relation())));
            assert_eq!(
                cover_of(&t).unwrap().covers(),
                q.covers(),
                "cover_of ∘ ts_of on {}",
                l.name()
            );
        }
        largest = largest.max(saturated.len());
    }
    format!("{} modular lattices, up to {largest} systems", lattices.len())
}

fn criterion_6() -> String {
    let mut counts = Vec::new();
    for n in 0..=4 {
        let l = lat(Standard::Boolean(n));
        let ops = enumerate_closure_operators(&l, LIMIT).unwrap();
        let moore = brute_submonoids(&l, false);
        assert_eq!(
            ops.len(),
            moore.len(),
            "closure operators vs Moore families on boolean({n})"
        );
        assert!(ops.iter().all(|f| is_closure(&l, f.table())));
        counts.push(ops.len());
    }
    assert_eq!(counts, vec![1, 2, 7, 61, 2480]);
    format!("{counts:?}")
}

/// Canonical form of a lattice up to isomorphism: the least order matrix
/// over all relabellings.
fn canonical(l: &Lattice) -> Vec<bool> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = l.size();
    perms(n)
        .into_iter()
        .map(|p| {
            let mut m = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    m[p[x] * n + p[y]] = l.leq(x, y);
                }
            }
            m
        })
        .min()
        .unwrap()
}

fn criterion_7() -> String {
    let mut lattices = 0;
    for n in 1..=5 {
        let all = labelled_lattices(n);
        let classes: BTreeSet<Vec<bool>> = all.iter().map(canonical).collect();
        assert_eq!(
            classes.len(),
            [1, 1, 1, 2, 5][n - 1],
            "isomorphism classes on {n} elements"
        );
        for l in all {
            let l = Arc::new(l);
            let dfs: BTreeSet<Pairs> = enumerate_transfer(&l, LIMIT)
                .unwrap()
                .iter()
                .map(|t| to_pairs(t.relation()))
                .collect();
            assert_eq!(dfs, brute_transfer(&l), "transfer systems on {:?}", l.labels());
            lattices += 1;
        }
    }
    format!("{lattices} labelled lattices")
}

fn criterion_8() -> String {
    let mut checks = 0usize;
    for l in [lat(Standard::Chain(3)), lat(Standard::Grid(1, 1))] {
        let universe = enumerate_fac(&l, LIMIT).unwrap();
        let chis: Vec<_> = universe.iter().map(|f| cochar::chi(f).unwrap()).collect();
        let lambdas: Vec<_> = universe.iter().map(|f| cochar::lambda(f).unwrap()).collect();
        for (i, f) in universe.iter().enumerate() {
            // values agree with the oracle; duality χ = λ∘op
            let r = to_pairs(f.right());
            assert_eq!(chis[i].table(), chi(&l, &r));
            assert_eq!(lambdas[i].table(), lambda(&l, &r));
            assert!(verify_duality(f));
            for (j, g) in universe.iter().enumerate() {
                // antitone
                if f.le(g) {
                    assert!(chis[j].pointwise_le(&chis[i]) && lambdas[j].pointwise_le(&lambdas[i]));
                }
                // fibers are stable under meets and joins
                let (a, b) = (to_transfer(f), to_transfer(g));
                let meet = from_transfer(&ts_meet(&a, &b).unwrap());
                let join = from_transfer(&ts_join(&a, &b).unwrap());
                if lambdas[i] == lambdas[j] {
                    assert_eq!(cochar::lambda(&meet).unwrap(), lambdas[i]);
                    assert_eq!(cochar::lambda(&join).unwrap(), lambdas[i]);
                }
                if chis[i] == chis[j] {
                    assert_eq!(cochar::chi(&meet).unwrap(), chis[i]);
                    assert_eq!(cochar::chi(&join).unwrap(), chis[i]);
                }
                // model structures on the interval [f, g]
                let m = ModelStructure::candidate(f.clone(), g.clone()).unwrap();
                let model = is_model_structure(&m).unwrap();
                if m.is_fibrant() {
                    assert_eq!(
                        model,
                        f.is_coreflective(),
                        "fibrant models are the coreflective systems"
                    );
                }
                if m.is_cofibrant() {
                    assert_eq!(model, g.is_reflective(), "cofibrant models are the reflective systems");
                }
                checks += 1;
            }
            // Galois adjunction over every subset
            for s in 0..1u64 << l.size() {
                assert!(galois_check(&l, ElemSet(s), f));
            }
        }
        // monads are exactly closure operators among all self-maps
        for t in all_maps(l.size()) {
            let e = cochar::Endo::new(l.clone(), t.clone()).unwrap();
            assert_eq!(is_monad(&l, &e), is_closure(&l, &t));
            checks += 1;
        }
        for s in [Suite::Submonoid, Suite::Monad, Suite::Model, Suite::Clsubmon] {
            assert!(run_suite(s, &l, SuiteParams::default(), LIMIT).unwrap().passed);
        }
    }
    format!("{checks} checks")
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("poly-Bernoulli reconciliation", criterion_1),
        ("factorization/transfer isomorphism", criterion_2),
        ("fibers are intervals", criterion_3),
        ("web equalities", criterion_4),
        ("matchstick bijection", criterion_5),
        ("Moore-family counts", criterion_6),
        ("oracle equivalence", criterion_7),
        ("property suites", criterion_8),
    ];
    let default_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {}: {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  criterion {}: {name}: {msg} [{secs:.1}s]", i + 1);
            }
        }
    }
    std::panic::set_hook(default_hook);
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
