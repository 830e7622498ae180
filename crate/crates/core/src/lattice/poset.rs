use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};

/// A finite partial order on at most 64 points; `below[i]` is the principal down-set of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    below: Vec<u64>,
}

pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn ones(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Default point names: a, b, ..., z, then p26, p27, ...
pub fn default_point_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` (each `(x, y)` meaning x ≤ y).
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        if n > 64 {
            return Err(Error::CapExceeded { what: "poset points", limit: 64 });
        }
        check_unique(&names)?;
        let mut below: Vec<u64> = (0..n).map(bit).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::NotPartialOrder(format!("pair ({x}, {y}) out of range")));
            }
            below[y] |= bit(x);
        }
        for k in 0..n {
            for j in 0..n {
                if below[j] & bit(k) != 0 {
                    below[j] |= below[k];
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if below[j] & bit(i) != 0 && below[i] & bit(j) != 0 {
                    return Err(Error::NotPartialOrder(format!(
                        "{} and {} lie on a cycle",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Poset { names, below })
    }

    /// Build from a complete order predicate, checking the partial order axioms.
    pub fn from_le(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = names.len();
        if n > 64 {
            return Err(Error::CapExceeded { what: "poset points", limit: 64 });
        }
        check_unique(&names)?;
        let mut below = vec![0u64; n];
        for (j, row) in below.iter_mut().enumerate() {
            for i in 0..n {
                if le(i, j) {
                    *row |= bit(i);
                }
            }
        }
        for i in 0..n {
            if below[i] & bit(i) == 0 {
                return Err(Error::NotPartialOrder(format!("{} ≰ {}", names[i], names[i])));
            }
            for j in 0..n {
                if i != j && below[j] & bit(i) != 0 && below[i] & bit(j) != 0 {
                    return Err(Error::NotPartialOrder(format!("{} and {} are mutually below", names[i], names[j])));
                }
                if below[j] & bit(i) != 0 && below[i] & !below[j] != 0 {
                    return Err(Error::NotPartialOrder(format!("transitivity fails through {}", names[i])));
                }
            }
        }
        Ok(Poset { names, below })
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::new((0..n).map(default_point_name).collect(), &[]).expect("antichain")
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new((0..n).map(default_point_name).collect(), &pairs).expect("chain")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.below[j] & bit(i) != 0
    }

    /// Principal down-set of `i` (including `i`).
    pub fn below(&self, i: usize) -> u64 {
        self.below[i]
    }

    /// Principal up-set of `i` (including `i`).
    pub fn above(&self, i: usize) -> u64 {
        (0..self.size()).filter(|&j| self.le(i, j)).fold(0, |m, j| m | bit(j))
    }

    pub fn full_mask(&self) -> u64 {
        if self.size() == 64 {
            u64::MAX
        } else {
            bit(self.size()) - 1
        }
    }

    pub fn is_down_set(&self, m: u64) -> bool {
        ones(m).all(|i| self.below[i] & !m == 0)
    }

    pub fn down_closure(&self, m: u64) -> u64 {
        ones(m).fold(0, |acc, i| acc | self.below[i])
    }

    /// All `(x, y)` with x ≤ y, including the reflexive pairs.
    pub fn le_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.le(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Covering pairs `(x, y)`: x < y with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for y in 0..n {
            let strict = self.below[y] & !bit(y);
            for x in ones(strict) {
                let between = strict & !self.below[x];
                if ones(between).all(|z| !self.le(x, z)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Points ordered so that every point comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by_key(|&i| (self.below[i].count_ones(), i));
        order
    }

    /// All down-sets as bit masks in increasing numeric order.
    pub fn down_sets(&self, limit: usize) -> Result<Vec<u64>> {
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
        while let Some((k, cur)) = stack.pop() {
            if k == order.len() {
                if out.len() >= limit {
                    return Err(Error::CapExceeded { what: "frame elements", limit });
                }
                out.push(cur);
                continue;
            }
            let p = order[k];
            stack.push((k + 1, cur));
            if self.below[p] & !bit(p) & !cur == 0 {
                stack.push((k + 1, cur | bit(p)));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub(crate) fn check_caps(&self, caps: &Caps) -> Result<()> {
        Caps::check("join-irreducibles", self.size(), caps.max_ji.min(64))
    }

    /// Order-isomorphism from `self` onto `other`, as a point map.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.size();
        if n != other.size() {
            return None;
        }
        let inv = |p: &Poset, i: usize| (p.below[i].count_ones(), p.above(i).count_ones());
        let mut a_inv: Vec<_> = (0..n).map(|i| inv(self, i)).collect();
        let mut b_inv: Vec<_> = (0..n).map(|i| inv(other, i)).collect();
        let (a_sorted, b_sorted) = {
            let mut a = a_inv.clone();
            let mut b = b_inv.clone();
            a.sort_unstable();
            b.sort_unstable();
            (a, b)
        };
        if a_sorted != b_sorted {
            return None;
        }
        let order = self.linear_extension();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &order, 0, &mut map, &mut used, &mut a_inv, &mut b_inv) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso(
        &self,
        other: &Poset,
        order: &[usize],
        k: usize,
        map: &mut [usize],
        used: &mut [bool],
        a_inv: &mut [(u32, u32)],
        b_inv: &mut [(u32, u32)],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let p = order[k];
        for q in 0..other.size() {
            if used[q] || a_inv[p] != b_inv[q] {
                continue;
            }
            let consistent = order[..k].iter().all(|&p2| {
                let q2 = map[p2];
                self.le(p2, p) == other.le(q2, q) && self.le(p, p2) == other.le(q, q2)
            });
            if !consistent {
                continue;
            }
            map[p] = q;
            used[q] = true;
            if self.extend_iso(other, order, k + 1, map, used, a_inv, b_inv) {
                return true;
            }
            used[q] = false;
            map[p] = usize::MAX;
        }
        false
    }

    /// A labelling-independent code: equal codes iff isomorphic.
    ///
    /// Exhaustive over invariant-respecting relabellings; meant for small posets.
    pub fn canonical_code(&self) -> Vec<u64> {
        let n = self.size();
        let key = |i: usize| (self.below[i].count_ones(), self.above(i).count_ones());
        let mut best: Option<Vec<u64>> = None;
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let mut classes: Vec<(u32, u32)> = (0..n).map(key).collect();
        classes.sort_unstable();
        self.canon_rec(&classes, &key, &mut perm, &mut used, &mut best);
        best.unwrap_or_default()
    }

    fn canon_rec(
        &self,
        classes: &[(u32, u32)],
        key: &dyn Fn(usize) -> (u32, u32),
        perm: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut Option<Vec<u64>>,
    ) {
        let n = self.size();
        let code_of = |perm: &[usize]| -> Vec<u64> {
            perm.iter()
                .map(|&p| {
                    perm.iter()
                        .enumerate()
                        .filter(|&(_, &q)| self.le(q, p))
                        .fold(0u64, |m, (pos, _)| m | bit(pos))
                })
                .collect()
        };
        if let Some(b) = best {
            let prefix = code_of(perm);
            // Prefix codes only see earlier positions, which is enough to prune.
            if prefix.as_slice() > &b[..perm.len()] {
                return;
            }
        }
        if perm.len() == n {
            let code = code_of(perm);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let want = classes[perm.len()];
        for p in 0..n {
            if used[p] || key(p) != want {
                continue;
            }
            used[p] = true;
            perm.push(p);
            self.canon_rec(classes, key, perm, used, best);
            perm.pop();
            used[p] = false;
        }
    }
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::NotPartialOrder(format!("duplicate point name {n:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(default_point_name).collect()
    }

    #[test]
    fn closure_and_cycles() {
        let p = Poset::new(names(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert!(!p.le(2, 0));
        assert!(matches!(
            Poset::new(names(2), &[(0, 1), (1, 0)]),
            Err(Error::NotPartialOrder(_))
        ));
        assert!(Poset::new(names(2), &[(0, 5)]).is_err());
    }

    #[test]
    fn from_le_rejects_non_orders() {
        assert!(Poset::from_le(names(2), |i, j| i <= j).is_ok());
        assert!(Poset::from_le(names(2), |_, _| true).is_err());
        assert!(Poset::from_le(names(2), |i, j| i < j).is_err());
        // 0 ≤ 1 ≤ 2 but not 0 ≤ 2
        assert!(Poset::from_le(names(3), |i, j| i == j || j == i + 1).is_err());
    }

    #[test]
    fn down_set_counts() {
        assert_eq!(Poset::antichain(0).down_sets(100).unwrap(), vec![0]);
        assert_eq!(Poset::antichain(2).down_sets(100).unwrap().len(), 4);
        assert_eq!(Poset::chain(2).down_sets(100).unwrap(), vec![0, 1, 3]);
        assert_eq!(Poset::antichain(4).down_sets(100).unwrap().len(), 16);
        assert!(Poset::antichain(4).down_sets(15).is_err());
    }

    #[test]
    fn down_sets_match_mask_scan() {
        let p = Poset::new(names(5), &[(0, 2), (1, 2), (2, 3), (1, 4)]).unwrap();
        let brute: Vec<u64> = (0u64..32).filter(|&m| p.is_down_set(m)).collect();
        assert_eq!(p.down_sets(1000).unwrap(), brute);
    }

    #[test]
    fn covers_skip_transitive_edges() {
        let p = Poset::chain(3);
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn isomorphism_and_canonical_codes() {
        let v = Poset::new(names(3), &[(0, 2), (1, 2)]).unwrap();
        let v2 = Poset::new(names(3), &[(1, 0), (2, 0)]).unwrap();
        let wedge = Poset::new(names(3), &[(0, 1), (0, 2)]).unwrap();
        let m = v.find_isomorphism(&v2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(v.le(i, j), v2.le(m[i], m[j]));
            }
        }
        assert!(v.find_isomorphism(&wedge).is_none());
        assert_eq!(v.canonical_code(), v2.canonical_code());
        assert_ne!(v.canonical_code(), wedge.canonical_code());
    }
}
