//! Exhaustive and seeded instance families shared by tests, the suite runner and the CLI.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::error::Result;
use crate::lattice::poset::{bit, default_point_name};
use crate::lattice::{Elem, FiniteFrame, Poset, Sublattice};
use crate::pervin::{PervinSpace, PointSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(default_point_name).collect()
}

/// All posets on `n` points up to isomorphism, from naturally labelled relations.
pub fn posets(n: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0u64..(1u64 << slots.len()) {
        let pairs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let set: HashSet<(usize, usize)> = pairs.iter().copied().collect();
        let transitive = pairs
            .iter()
            .all(|&(a, b)| pairs.iter().filter(|p| p.0 == b).all(|&(_, c)| set.contains(&(a, c))));
        if !transitive {
            continue;
        }
        let p = Poset::new(names(n), &pairs).expect("naturally labelled relation is an order");
        if seen.insert(p.canonical_code()) {
            out.push(p);
        }
    }
    out
}

/// Every frame with at most `max_ji` join-irreducibles, up to isomorphism.
pub fn frames_by_ji(max_ji: usize) -> Vec<FiniteFrame> {
    (0..=max_ji)
        .flat_map(posets)
        .map(|p| FiniteFrame::from_poset(p).expect("small poset"))
        .collect()
}

/// Every frame with at most `max_elements` elements, up to isomorphism.
pub fn frames_by_size(max_elements: usize) -> Vec<FiniteFrame> {
    let mut out = Vec::new();
    for n in 0..max_elements.min(6) {
        for p in posets(n) {
            if p.down_sets(max_elements + 1).map(|d| d.len() <= max_elements).unwrap_or(false) {
                out.push(FiniteFrame::from_poset(p).expect("small poset"));
            }
        }
    }
    out.sort_by_key(|f| f.len());
    out
}

/// A random order on `n` points: each pair i < j of a random linear order is kept
/// with probability `p`, then closed transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::new(names(n), &pairs).expect("a relation along a linear order is acyclic")
}

/// A random frame with between 1 and `max_ji` join-irreducibles.
pub fn random_frame(rng: &mut ChaCha8Rng, max_ji: usize, caps: &Caps) -> Result<FiniteFrame> {
    let n = rng.gen_range(1..=max_ji.max(1));
    FiniteFrame::from_poset_capped(random_poset(rng, n, 0.4), caps)
}

/// All bounded sublattices of 𝒫(X) for |X| = n.
pub fn pervin_spaces(n: usize) -> Vec<PervinSpace> {
    let full: PointSet = if n == 0 { 0 } else { bit(n) - 1 };
    let middle: Vec<PointSet> = (1..full).collect();
    let universe = PervinSpace::default_universe(n);
    let mut out = Vec::new();
    for code in 0u64..(1u64 << middle.len()) {
        let mut family: Vec<PointSet> = vec![0, full];
        family.extend(middle.iter().enumerate().filter(|(k, _)| code >> k & 1 == 1).map(|(_, &s)| s));
        let set: HashSet<PointSet> = family.iter().copied().collect();
        let closed = family
            .iter()
            .all(|&a| family.iter().all(|&b| set.contains(&(a & b)) && set.contains(&(a | b))));
        if closed {
            out.push(PervinSpace::new(universe.clone(), family).expect("closed family"));
        }
    }
    out
}

/// Every Pervin space with at most `max_points` points.
pub fn pervin_catalog(max_points: usize) -> Vec<PervinSpace> {
    (0..=max_points).flat_map(pervin_spaces).collect()
}

/// A random Pervin space on `n` points generated by a few random subsets.
pub fn random_pervin(rng: &mut ChaCha8Rng, n: usize) -> PervinSpace {
    let full: PointSet = bit(n) - 1;
    let k = rng.gen_range(0..=n + 1);
    let gens: Vec<PointSet> = (0..k).map(|_| rng.gen_range(0..=full)).collect();
    PervinSpace::generated(PervinSpace::default_universe(n), &gens).expect("generated family")
}

/// A frame K with a set R of complemented elements.
#[derive(Clone, Debug)]
pub struct SublatticeInstance {
    pub k: FiniteFrame,
    pub r: Vec<Elem>,
}

/// K is a product of one to three random small frames, so that it has nontrivial
/// complemented elements. R is a random subset of them.
pub fn random_sublattice_instance(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<SublatticeInstance> {
    let factors = rng.gen_range(1..=3);
    let mut k = FiniteFrame::two();
    for i in 0..factors {
        let budget = if i == 0 { 3 } else { 2 };
        let f = random_frame(rng, budget, caps)?;
        k = if i == 0 { f } else { k.product(&f)?.0 };
    }
    let mut b: Vec<Elem> = k.elements().filter(|&x| k.is_complemented(x)).collect();
    b.shuffle(rng);
    let take = rng.gen_range(0..=b.len().min(4));
    let mut r: Vec<Elem> = b.into_iter().take(take).collect();
    r.sort();
    Ok(SublatticeInstance { k, r })
}

/// Instances where K is generated by R and the complements of R: Boolean K, or 𝒞L with R = ∇[L].
pub fn random_generating_instance(rng: &mut ChaCha8Rng, caps: &Caps) -> Result<SublatticeInstance> {
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=3);
        let k = FiniteFrame::boolean(n);
        let atoms: Vec<Elem> = k.elements().filter(|&x| k.mask(x).count_ones() == 1).collect();
        let extra: Vec<Elem> = k.elements().filter(|_| rng.gen_bool(0.3)).collect();
        let mut r: Vec<Elem> = atoms.into_iter().chain(extra).collect();
        r.sort();
        r.dedup();
        Ok(SublatticeInstance { k, r })
    } else {
        let l = random_frame(rng, 3, caps)?;
        let cf = crate::congruence::CongruenceFrame::full(&l, caps)?;
        let r = l.elements().map(|a| cf.nabla(a)).collect();
        Ok(SublatticeInstance { k: cf.structure().clone(), r })
    }
}

/// ⟨R⟩ as a bounded sublattice.
pub fn generated(inst: &SublatticeInstance) -> Sublattice {
    Sublattice::generated(&inst.k, inst.r.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn frame_counts() {
        assert_eq!(frames_by_ji(3).len(), 9);
        let by_size: Vec<usize> = (1..=6)
            .map(|k| frames_by_size(6).iter().filter(|f| f.len() == k).count())
            .collect();
        assert_eq!(by_size, vec![1, 1, 1, 2, 3, 5]);
    }

    #[test]
    fn pervin_counts() {
        assert_eq!(pervin_spaces(2).len(), 4);
        assert!(pervin_spaces(3).iter().all(|x| x.lattice().len() >= 2));
    }

    #[test]
    fn random_posets_reach_every_labelled_order() {
        let mut seen = HashSet::new();
        for seed in 0..64 {
            let p = random_poset(&mut rng(seed), 2, 0.5);
            seen.insert(p.le_pairs());
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let caps = Caps::default();
        let a: Vec<usize> = (0..20).map(|s| random_frame(&mut rng(s), 5, &caps).unwrap().len()).collect();
        let b: Vec<usize> = (0..20).map(|s| random_frame(&mut rng(s), 5, &caps).unwrap().len()).collect();
        assert_eq!(a, b);
        let x = random_pervin(&mut rng(7), 4);
        assert_eq!(x, random_pervin(&mut rng(7), 4));
    }
}
