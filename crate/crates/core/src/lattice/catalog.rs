use super::Lattice;
use crate::bits::BitIter;

/// Every lattice on `0..n` whose index order is a linear extension.
///
/// Each isomorphism class appears at least once (usually several times, once
/// per compatible numbering). Only practical for small `n`.
pub fn labelled_lattices(n: usize) -> Vec<Lattice> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![Lattice::from_order(vec!["0".into()], vec![1])
            .unwrap()
            .with_name("labelled(1)#0")];
    }
    // Free pairs are strict pairs among the middle elements 1..n-1.
    let free: Vec<(usize, usize)> = (1..n - 1).flat_map(|x| (x + 1..n - 1).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << free.len() {
        let mut up: Vec<u64> = (0..n).map(|x| 1u64 << x | 1 << (n - 1)).collect();
        up[0] = (1u64 << n) - 1;
        for (i, &(x, y)) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                up[x] |= 1 << y;
            }
        }
        let transitive = (0..n).all(|x| BitIter(up[x]).all(|y| up[y] & !up[x] == 0));
        if !transitive {
            continue;
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        if let Ok(l) = Lattice::from_order(labels, up) {
            let id = out.len();
            out.push(l.with_name(format!("labelled({n})#{id}")));
        }
    }
    out
}
