//! Brute-force oracles written straight from the definitions. They only
//! use the lattice's order, meet and join; nothing here goes through the
//! library's closure or enumeration code.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use latfac::{Lattice, Relation, Standard};

pub type Pairs = BTreeSet<(usize, usize)>;

pub fn lat(s: Standard) -> Arc<Lattice> {
    Arc::new(s.build().unwrap())
}

/// The lattices used by most acceptance criteria.
pub fn test_lattices() -> Vec<Arc<Lattice>> {
    let mut v: Vec<_> = (0..=4).map(|n| lat(Standard::Chain(n))).collect();
    for s in [
        Standard::Grid(1, 1),
        Standard::Grid(2, 1),
        Standard::Bowtie(2),
        Standard::Bowtie(3),
        Standard::Diamond,
        Standard::Pentagon,
    ] {
        v.push(lat(s));
    }
    v
}

pub fn strict_pairs(l: &Lattice) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for x in l.elements() {
        for y in l.elements() {
            if x != y && l.leq(x, y) {
                v.push((x, y));
            }
        }
    }
    v
}

pub fn to_pairs(rel: &Relation) -> Pairs {
    rel.pairs().collect()
}

fn holds(r: &Pairs, x: usize, y: usize) -> bool {
    x == y || r.contains(&(x, y))
}

/// Transitive and closed under pullback: `x R y`, `z <= y` give `(x ∧ z) R z`.
pub fn is_transfer(l: &Lattice, r: &Pairs) -> bool {
    for &(a, b) in r {
        if !l.leq(a, b) {
            return false;
        }
        for &(c, d) in r {
            if b == c && !holds(r, a, d) {
                return false;
            }
        }
        for z in l.elements() {
            if l.leq(z, b) && !holds(r, l.meet(a, z), z) {
                return false;
            }
        }
    }
    true
}

/// Two of `x R y`, `y R z`, `x R z` for `x <= y <= z` force the third;
/// only the case not covered by transitivity needs checking.
pub fn is_saturated(l: &Lattice, r: &Pairs) -> bool {
    for &(x, z) in r {
        for y in l.elements() {
            if l.leq(x, y) && l.leq(y, z) && holds(r, x, y) && !holds(r, y, z) {
                return false;
            }
        }
    }
    true
}

/// Every transfer system, by filtering all subsets of the strict order.
pub fn brute_transfer(l: &Lattice) -> BTreeSet<Pairs> {
    let pairs = strict_pairs(l);
    assert!(pairs.len() <= 22, "too many pairs for brute force");
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let r: Pairs = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        if is_transfer(l, &r) {
            out.insert(r);
        }
    }
    out
}

/// Smallest transfer system containing `seed`, by naive fixpoint iteration.
pub fn close(l: &Lattice, seed: &Pairs) -> Pairs {
    let mut r = seed.clone();
    loop {
        let mut add = Vec::new();
        for &(a, b) in &r {
            for &(c, d) in &r {
                if b == c && a != d {
                    add.push((a, d));
                }
            }
            for z in l.elements() {
                if l.leq(z, b) && l.meet(a, z) != z {
                    add.push((l.meet(a, z), z));
                }
            }
        }
        let before = r.len();
        r.extend(add);
        if r.len() == before {
            return r;
        }
    }
}

/// Generated by `{(x, 1) : x ∈ R/1}`.
pub fn is_disklike(l: &Lattice, r: &Pairs) -> bool {
    let seed: Pairs = r.iter().copied().filter(|&(_, y)| y == l.top()).collect();
    close(l, &seed) == *r
}

/// Closed under `op` and containing its identity.
pub fn brute_submonoids(l: &Lattice, join: bool) -> BTreeSet<u64> {
    let n = l.size();
    assert!(n <= 20);
    let unit = if join { l.bottom() } else { l.top() };
    let op = |x, y| if join { l.join(x, y) } else { l.meet(x, y) };
    (0u64..1 << n)
        .filter(|s| {
            s >> unit & 1 == 1
                && (0..n).all(|x| s >> x & 1 == 0 || (0..n).all(|y| s >> y & 1 == 0 || s >> op(x, y) & 1 == 1))
        })
        .collect()
}

/// `x ↦ min{y ∈ S : x <= y}` for a meet-submonoid `S`.
pub fn closure_of(l: &Lattice, s: u64) -> Vec<usize> {
    l.elements()
        .map(|x| {
            let above: Vec<usize> = l.elements().filter(|&y| s >> y & 1 == 1 && l.leq(x, y)).collect();
            *above
                .iter()
                .find(|&&m| above.iter().all(|&y| l.leq(m, y)))
                .expect("minimum")
        })
        .collect()
}

/// `x ↦ max{y ∈ S : y <= x}` for a join-submonoid `S`.
pub fn interior_of(l: &Lattice, s: u64) -> Vec<usize> {
    l.elements()
        .map(|x| {
            let below: Vec<usize> = l.elements().filter(|&y| s >> y & 1 == 1 && l.leq(y, x)).collect();
            *below
                .iter()
                .find(|&&m| below.iter().all(|&y| l.leq(y, m)))
                .expect("maximum")
        })
        .collect()
}

/// `(a, b)` lifts against `(x, y)`: `a <= x` and `b <= y` imply `b <= x`.
pub fn lifts(l: &Lattice, (a, b): (usize, usize), (x, y): (usize, usize)) -> bool {
    !(l.leq(a, x) && l.leq(b, y)) || l.leq(b, x)
}

/// Relations (including identities) with the left lifting property
/// against all of `r`; returned without identities.
pub fn left_class(l: &Lattice, r: &Pairs) -> Pairs {
    let with_ids: Vec<(usize, usize)> = r.iter().copied().chain(l.elements().map(|x| (x, x))).collect();
    strict_pairs(l)
        .into_iter()
        .filter(|&i| with_ids.iter().all(|&p| lifts(l, i, p)))
        .collect()
}

/// `χ(x) = min{y : y R x}`.
pub fn chi(l: &Lattice, r: &Pairs) -> Vec<usize> {
    l.elements()
        .map(|x| {
            let c: Vec<usize> = l.elements().filter(|&y| holds(r, y, x)).collect();
            *c.iter().find(|&&m| c.iter().all(|&y| l.leq(m, y))).expect("minimum")
        })
        .collect()
}

/// `λ(x) = min{y >= x : y R 1}`.
pub fn lambda(l: &Lattice, r: &Pairs) -> Vec<usize> {
    l.elements()
        .map(|x| {
            let c: Vec<usize> = l.elements().filter(|&y| l.leq(x, y) && holds(r, y, l.top())).collect();
            *c.iter().find(|&&m| c.iter().all(|&y| l.leq(m, y))).expect("minimum")
        })
        .collect()
}

/// Every map `P -> P`, as tables.
pub fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn is_closure(l: &Lattice, f: &[usize]) -> bool {
    l.elements()
        .all(|x| l.leq(x, f[x]) && f[f[x]] == f[x] && l.elements().all(|y| !l.leq(x, y) || l.leq(f[x], f[y])))
}

pub fn is_interior(l: &Lattice, f: &[usize]) -> bool {
    l.elements()
        .all(|x| l.leq(f[x], x) && f[f[x]] == f[x] && l.elements().all(|y| !l.leq(x, y) || l.leq(f[x], f[y])))
}

/// Set partitions of an `n`-set into `k` blocks, counted by listing
/// restricted growth strings.
pub fn stirling2(n: usize, k: usize) -> u128 {
    fn go(i: usize, n: usize, k: usize, blocks: usize) -> u128 {
        if i == n {
            return u128::from(blocks == k);
        }
        (0..=blocks.min(k.saturating_sub(1)))
            .map(|b| go(i + 1, n, k, blocks.max(b + 1)))
            .sum()
    }
    go(0, n, k, 0)
}

/// `Σ_k (k!)² S(a+1, k+1) S(b+1, k+1)` with partition-counted Stirling numbers.
pub fn poly_bernoulli(a: usize, b: usize) -> u128 {
    (0..=a.min(b))
        .map(|k| {
            let f: u128 = (1..=k as u128).product();
            f * f * stirling2(a + 1, k + 1) * stirling2(b + 1, k + 1)
        })
        .sum()
}
