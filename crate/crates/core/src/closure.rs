//! Enumeration of the closed sets of a closure operator (Ganter's NextClosure).

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// All closed sets of `close` over the universe `0..n`, in lectic order.
///
/// `close` must be extensive, monotone and idempotent. Fails with
/// `CapExceeded` once more than `limit` closed sets have been produced.
pub fn closed_sets<F>(n: usize, mut close: F, limit: usize, what: &'static str) -> Result<Vec<FixedBitSet>>
where
    F: FnMut(&FixedBitSet) -> FixedBitSet,
{
    let mut out = Vec::new();
    let mut current = close(&FixedBitSet::with_capacity(n));
    loop {
        if out.len() >= limit {
            return Err(Error::CapExceeded { what, limit });
        }
        out.push(current.clone());
        match next(n, &current, &mut close) {
            Some(b) => current = b,
            None => return Ok(out),
        }
    }
}

fn next<F>(n: usize, a: &FixedBitSet, close: &mut F) -> Option<FixedBitSet>
where
    F: FnMut(&FixedBitSet) -> FixedBitSet,
{
    for i in (0..n).rev() {
        if a.contains(i) {
            continue;
        }
        let mut seed = FixedBitSet::with_capacity(n);
        for j in a.ones().take_while(|&j| j < i) {
            seed.insert(j);
        }
        seed.insert(i);
        let b = close(&seed);
        // Accept when nothing new appears below i.
        if b.ones().take_while(|&j| j < i).eq(a.ones().take_while(|&j| j < i)) {
            return Some(b);
        }
    }
    None
}

/// Repeatedly apply `step` until it reports no change.
pub fn fixpoint<T, F>(mut value: T, mut step: F) -> T
where
    F: FnMut(&mut T) -> bool,
{
    while step(&mut value) {}
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_mask(n: usize, m: u32) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if m >> i & 1 == 1 {
                s.insert(i);
            }
        }
        s
    }

    // Down-closure in the divisibility-like order i ≤ j iff i's bits ⊆ j's bits on 0..n.
    fn down_close(n: usize, s: &FixedBitSet) -> FixedBitSet {
        let mut out = s.clone();
        for j in s.ones() {
            for i in 0..n {
                if i & j == i {
                    out.insert(i);
                }
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_on_down_sets() {
        let n = 6;
        let got = closed_sets(n, |s| down_close(n, s), usize::MAX, "test").unwrap();
        let mut brute: Vec<FixedBitSet> = (0u32..1 << n)
            .map(|m| from_mask(n, m))
            .filter(|s| down_close(n, s) == *s)
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        brute.sort();
        assert_eq!(got_sorted, brute);
        // no duplicates
        got_sorted.dedup();
        assert_eq!(got_sorted.len(), got.len());
    }

    #[test]
    fn identity_closure_gives_power_set() {
        let got = closed_sets(4, |s| s.clone(), usize::MAX, "test").unwrap();
        assert_eq!(got.len(), 16);
    }

    #[test]
    fn limit_is_reported() {
        let err = closed_sets(4, |s| s.clone(), 10, "sets").unwrap_err();
        assert_eq!(err, Error::CapExceeded { what: "sets", limit: 10 });
    }
}
