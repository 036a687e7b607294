//! Canonical enumeration of the closed sets of a closure operator on a
//! bitset ground set (Ganter's next-closure scheme).
//!
//! Sets are words of `u64`; global bit `64 * w + b` is bit `b` of word `w`.
//! Closed sets come out in ascending order of their value as binary numbers
//! (higher bits more significant), each exactly once, without any
//! deduplication table.

use crate::error::{Error, Result};

fn has_bit(set: &[u64], bit: usize) -> bool {
    set[bit / 64] >> (bit % 64) & 1 == 1
}

/// Whether `extra` has a set bit strictly above `bit`.
fn any_above(extra: &[u64], bit: usize) -> bool {
    let (w, b) = (bit / 64, bit % 64);
    let in_word = if b == 63 { 0 } else { extra[w] >> (b + 1) };
    in_word != 0 || extra[w + 1..].iter().any(|&x| x != 0)
}

/// Visits every closed subset of `ground`. `close` must be extensive,
/// monotone and idempotent on subsets of `ground`.
///
/// Fails with `EnumerationLimitExceeded` once more than `limit` sets would
/// be produced.
pub(crate) fn for_each_closed<C, V>(ground: &[u64], mut close: C, limit: usize, mut visit: V) -> Result<usize>
where
    C: FnMut(&[u64]) -> Vec<u64>,
    V: FnMut(&[u64]),
{
    let bits: Vec<usize> = ground
        .iter()
        .enumerate()
        .flat_map(|(w, &word)| crate::bits::BitIter(word).map(move |b| 64 * w + b))
        .collect();
    let mut current = close(&vec![0; ground.len()]);
    let mut count = 0usize;
    loop {
        count += 1;
        if count > limit {
            return Err(Error::EnumerationLimitExceeded(limit));
        }
        visit(&current);

        let mut next = None;
        let mut base = current.clone();
        for &bit in &bits {
            if has_bit(&base, bit) {
                base[bit / 64] &= !(1 << (bit % 64));
                continue;
            }
            let mut seed = base.clone();
            seed[bit / 64] |= 1 << (bit % 64);
            let candidate = close(&seed);
            let extra: Vec<u64> = candidate.iter().zip(&base).map(|(c, a)| c & !a).collect();
            if !any_above(&extra, bit) {
                next = Some(candidate);
                break;
            }
        }
        match next {
            Some(set) => current = set,
            None => return Ok(count),
        }
    }
}

/// Collects all closed sets in canonical order.
pub(crate) fn all_closed<C>(ground: &[u64], close: C, limit: usize) -> Result<Vec<Vec<u64>>>
where
    C: FnMut(&[u64]) -> Vec<u64>,
{
    let mut out = Vec::new();
    for_each_closed(ground, close, limit, |set| out.push(set.to_vec()))?;
    Ok(out)
}
