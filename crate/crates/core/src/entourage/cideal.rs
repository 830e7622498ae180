//! C-ideals of L × M: down-sets containing the axes and closed under joins in each coordinate.
//!
//! Such a set is determined by its row maxima f(y) = ⋁{x : (x, y) ∈ A}; these are exactly
//! the maps with f(0) = 1 sending joins to meets, and (x, y) ∈ A iff x ≤ f(y).

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::closure::closed_sets;
use crate::error::{Error, Result};
use crate::lattice::poset::{bit, ones};
use crate::lattice::{Elem, FiniteFrame, FrameHom};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CIdeal {
    left: FiniteFrame,
    right: FiniteFrame,
    rowmax: Vec<Elem>,
}

impl fmt::Debug for CIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .right
            .elements()
            .map(|y| format!("{}:{}", self.right.name(y), self.left.name(self.rowmax[y.index()])))
            .collect();
        write!(f, "CIdeal[{}]", parts.join(" "))
    }
}

/// Saturate row maxima in place: f(0) = 1, antitone, f(y ∨ j) ≥ f(y) ∧ f(j) for join-irreducible j.
fn saturate(l: &FiniteFrame, m: &FiniteFrame, f: &mut [Elem]) {
    f[m.bottom().index()] = l.top();
    let covers = m.covers();
    let jis = m.join_irreducibles();
    loop {
        let mut changed = false;
        for &(lo, hi) in covers.iter().rev() {
            let j = l.join(f[lo.index()], f[hi.index()]);
            if j != f[lo.index()] {
                f[lo.index()] = j;
                changed = true;
            }
        }
        for y in m.elements() {
            for &c in &jis {
                let z = m.join(y, c).index();
                let j = l.join(f[z], l.meet(f[y.index()], f[c.index()]));
                if j != f[z] {
                    f[z] = j;
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

impl CIdeal {
    /// Least C-ideal containing `seeds`.
    pub fn generated(l: &FiniteFrame, m: &FiniteFrame, seeds: impl IntoIterator<Item = (Elem, Elem)>) -> CIdeal {
        let mut f = vec![l.bottom(); m.len()];
        for (x, y) in seeds {
            f[y.index()] = l.join(f[y.index()], x);
        }
        saturate(l, m, &mut f);
        CIdeal { left: l.clone(), right: m.clone(), rowmax: f }
    }

    /// From row maxima, checking the defining laws.
    pub fn from_rowmax(l: &FiniteFrame, m: &FiniteFrame, rowmax: Vec<Elem>) -> Result<CIdeal> {
        if rowmax.len() != m.len() {
            return Err(Error::Precondition("row table has the wrong length".into()));
        }
        let c = CIdeal { left: l.clone(), right: m.clone(), rowmax };
        if c.rowmax[m.bottom().index()] != l.top() {
            return Err(Error::Precondition("axis {0} × L missing".into()));
        }
        for y1 in m.elements() {
            for y2 in m.elements() {
                if c.row(m.join(y1, y2)) != l.meet(c.row(y1), c.row(y2)) {
                    return Err(Error::Precondition("not closed under joins in the second coordinate".into()));
                }
            }
        }
        Ok(c)
    }

    /// The axes (L × {0}) ∪ ({0} × M).
    pub fn bottom(l: &FiniteFrame, m: &FiniteFrame) -> CIdeal {
        CIdeal::generated(l, m, [])
    }

    pub fn top(l: &FiniteFrame, m: &FiniteFrame) -> CIdeal {
        CIdeal { left: l.clone(), right: m.clone(), rowmax: vec![l.top(); m.len()] }
    }

    /// a ⊕ b, given directly as ↓(a, b) ∪ axes.
    pub fn oplus(l: &FiniteFrame, m: &FiniteFrame, a: Elem, b: Elem) -> CIdeal {
        let rowmax = m
            .elements()
            .map(|y| {
                if y == m.bottom() {
                    l.top()
                } else if m.le(y, b) {
                    a
                } else {
                    l.bottom()
                }
            })
            .collect();
        CIdeal { left: l.clone(), right: m.clone(), rowmax }
    }

    pub fn left(&self) -> &FiniteFrame {
        &self.left
    }

    pub fn right(&self) -> &FiniteFrame {
        &self.right
    }

    /// ⋁{x : (x, y) ∈ A}.
    pub fn row(&self, y: Elem) -> Elem {
        self.rowmax[y.index()]
    }

    pub fn rows(&self) -> &[Elem] {
        &self.rowmax
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.left.le(x, self.row(y))
    }

    /// All member pairs.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.left.elements() {
            for y in self.right.elements() {
                if self.contains(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn le(&self, other: &CIdeal) -> bool {
        self.right.elements().all(|y| self.left.le(self.row(y), other.row(y)))
    }

    pub fn meet(&self, other: &CIdeal) -> CIdeal {
        let rowmax = self
            .right
            .elements()
            .map(|y| self.left.meet(self.row(y), other.row(y)))
            .collect();
        CIdeal { left: self.left.clone(), right: self.right.clone(), rowmax }
    }

    pub fn join(&self, other: &CIdeal) -> CIdeal {
        let mut f: Vec<Elem> = self
            .right
            .elements()
            .map(|y| self.left.join(self.row(y), other.row(y)))
            .collect();
        saturate(&self.left, &self.right, &mut f);
        CIdeal { left: self.left.clone(), right: self.right.clone(), rowmax: f }
    }

    /// Values on the join-irreducibles of the right factor; these determine the C-ideal.
    pub fn key(&self) -> Vec<Elem> {
        self.right.join_irreducibles().into_iter().map(|j| self.row(j)).collect()
    }

    /// Every C-ideal of L × M, via antitone maps from J(M) to L.
    pub fn enumerate(l: &FiniteFrame, m: &FiniteFrame, limit: usize) -> Result<Vec<CIdeal>> {
        let p = m.jir();
        let order = p.linear_extension();
        let mut phi = vec![l.top(); p.size()];
        let mut out = Vec::new();
        fn rec(
            l: &FiniteFrame,
            m: &FiniteFrame,
            order: &[usize],
            k: usize,
            phi: &mut [Elem],
            out: &mut Vec<CIdeal>,
            limit: usize,
        ) -> Result<()> {
            let p = m.jir();
            if k == order.len() {
                if out.len() >= limit {
                    return Err(Error::CapExceeded { what: "C-ideals", limit });
                }
                let rowmax = m
                    .elements()
                    .map(|y| l.meet_all(ones(m.mask(y)).map(|i| phi[i])))
                    .collect();
                out.push(CIdeal { left: l.clone(), right: m.clone(), rowmax });
                return Ok(());
            }
            let q = order[k];
            let lower: Vec<usize> = ones(p.below(q) & !bit(q)).collect();
            for x in l.elements() {
                if lower.iter().all(|&q2| l.le(x, phi[q2])) {
                    phi[q] = x;
                    rec(l, m, order, k + 1, phi, out, limit)?;
                }
            }
            Ok(())
        }
        rec(l, m, &order, 0, &mut phi, &mut out, limit)?;
        Ok(out)
    }

    /// A ∘ B = ⋁{x ⊕ y : ∃ c ≠ 0, (x, c) ∈ A, (c, y) ∈ B}, for C-ideals of L × L.
    pub fn compose(&self, other: &CIdeal) -> CIdeal {
        let l = &self.left;
        assert!(self.right == *l && other.left == *l && other.right == *l, "composition needs L × L");
        let mut f = vec![l.bottom(); l.len()];
        for c in l.elements().filter(|&c| c != l.bottom()) {
            let x = self.row(c);
            for y in l.elements() {
                if l.le(c, other.row(y)) {
                    f[y.index()] = l.join(f[y.index()], x);
                }
            }
        }
        saturate(l, l, &mut f);
        CIdeal { left: l.clone(), right: l.clone(), rowmax: f }
    }

    /// {(y, x) : (x, y) ∈ A}.
    pub fn inverse(&self) -> CIdeal {
        let (l, m) = (&self.left, &self.right);
        let rowmax = l
            .elements()
            .map(|x| m.join_all(m.elements().filter(|&y| self.contains(x, y))))
            .collect();
        CIdeal { left: m.clone(), right: l.clone(), rowmax }
    }

    /// {a : (a, a) ∈ A}.
    pub fn diagonal(&self) -> Vec<Elem> {
        self.left.elements().filter(|&a| self.contains(a, a)).collect()
    }

    pub fn is_entourage(&self) -> bool {
        self.left.join_all(self.diagonal()) == self.left.top()
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self) == *self
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse() == *self
    }

    /// Finite by the diagonal criterion: the diagonal covers 1.
    pub fn is_finite_by_diagonal(&self) -> bool {
        self.is_entourage()
    }

    /// Finite by the join criterion: for the cover by nonzero diagonal elements,
    /// ⋁ cᵢ ⊕ cᵢ (computed by saturation) lies inside the C-ideal.
    pub fn is_finite_by_cover(&self) -> bool {
        let l = &self.left;
        let cover: Vec<Elem> = self.diagonal().into_iter().filter(|&c| c != l.bottom()).collect();
        if l.join_all(cover.iter().copied()) != l.top() {
            return false;
        }
        let joined = CIdeal::generated(l, l, cover.iter().map(|&c| (c, c)));
        joined.le(self)
    }

    /// E_r = (r ⊕ 1) ∪ (1 ⊕ r*): (x, y) ∈ E_r iff x ≤ r or y ≤ r*.
    pub fn e_r(l: &FiniteFrame, r: Elem) -> CIdeal {
        let rs = l.pseudocomplement(r);
        let rowmax = l
            .elements()
            .map(|y| if l.le(y, rs) { l.top() } else { r })
            .collect();
        CIdeal { left: l.clone(), right: l.clone(), rowmax }
    }

    /// (h ⊕ g)(A): the C-ideal generated by the pointwise image.
    pub fn image(&self, h: &FrameHom, g: &FrameHom) -> CIdeal {
        let seeds = self.right.elements().map(|y| (h.apply(self.row(y)), g.apply(y)));
        CIdeal::generated(h.cod(), g.cod(), seeds)
    }
}

/// Literal saturation of a pair set: alternate down-closure with row and column join closure.
pub fn saturate_pairs(l: &FiniteFrame, m: &FiniteFrame, seeds: &[(Elem, Elem)]) -> CIdeal {
    let n2 = m.len();
    let mut s = FixedBitSet::with_capacity(l.len() * n2);
    for &(x, y) in seeds {
        s.insert(x.index() * n2 + y.index());
    }
    let s = saturate_bits(l, m, &s);
    from_bits(l, m, &s)
}

fn saturate_bits(l: &FiniteFrame, m: &FiniteFrame, seed: &FixedBitSet) -> FixedBitSet {
    let n2 = m.len();
    let mut s = seed.clone();
    for x in l.elements() {
        s.insert(x.index() * n2);
    }
    for y in m.elements() {
        s.insert(y.index());
    }
    loop {
        let before = s.clone();
        let pairs: Vec<(Elem, Elem)> = s.ones().map(|i| (Elem::new(i / n2), Elem::new(i % n2))).collect();
        for &(x, y) in &pairs {
            for x2 in l.down_set(x) {
                for y2 in m.down_set(y) {
                    s.insert(x2.index() * n2 + y2.index());
                }
            }
        }
        for y in m.elements() {
            let j = l.join_all(l.elements().filter(|&x| s.contains(x.index() * n2 + y.index())));
            s.insert(j.index() * n2 + y.index());
        }
        for x in l.elements() {
            let j = m.join_all(m.elements().filter(|&y| s.contains(x.index() * n2 + y.index())));
            s.insert(x.index() * n2 + j.index());
        }
        if s == before {
            return s;
        }
    }
}

fn from_bits(l: &FiniteFrame, m: &FiniteFrame, s: &FixedBitSet) -> CIdeal {
    let n2 = m.len();
    let rowmax = m
        .elements()
        .map(|y| l.join_all(l.elements().filter(|&x| s.contains(x.index() * n2 + y.index()))))
        .collect();
    CIdeal { left: l.clone(), right: m.clone(), rowmax }
}

/// Every C-ideal of L × M by closure enumeration over the pair universe.
pub fn cideals_by_closure(l: &FiniteFrame, m: &FiniteFrame, limit: usize) -> Result<Vec<CIdeal>> {
    let sets = closed_sets(l.len() * m.len(), |s| saturate_bits(l, m, s), limit, "C-ideals")?;
    Ok(sets.iter().map(|s| from_bits(l, m, s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn d4() -> FiniteFrame {
        FiniteFrame::boolean(2)
    }

    fn e(l: &FiniteFrame, n: &str) -> Elem {
        l.by_name(n).unwrap()
    }

    #[test]
    fn oplus_examples() {
        for l in [FiniteFrame::two(), d4(), FiniteFrame::chain(4)] {
            let b = CIdeal::oplus(&l, &l, l.bottom(), l.bottom());
            assert_eq!(b, CIdeal::bottom(&l, &l));
            assert_eq!(CIdeal::oplus(&l, &l, l.top(), l.top()), CIdeal::top(&l, &l));
            for a in l.elements() {
                for c in l.elements() {
                    let direct = CIdeal::oplus(&l, &l, a, c);
                    assert_eq!(direct, CIdeal::generated(&l, &l, [(a, c)]));
                    assert_eq!(direct, saturate_pairs(&l, &l, &[(a, c)]));
                    for (x, y) in direct.pairs() {
                        assert!((l.le(x, a) && l.le(y, c)) || x == l.bottom() || y == l.bottom());
                    }
                }
            }
        }
    }

    #[test]
    fn saturation_agrees_with_literal_closure() {
        let l = FiniteFrame::chain(3);
        let m = d4();
        let elems: Vec<(Elem, Elem)> = l.elements().flat_map(|x| m.elements().map(move |y| (x, y))).collect();
        for i in 0..elems.len() {
            for j in i..elems.len() {
                let seeds = [elems[i], elems[j]];
                assert_eq!(CIdeal::generated(&l, &m, seeds), saturate_pairs(&l, &m, &seeds));
            }
        }
    }

    #[test]
    fn enumeration_agrees_with_closure_enumeration() {
        for (l, m) in [(FiniteFrame::two(), FiniteFrame::two()), (FiniteFrame::chain(3), d4()), (d4(), d4())] {
            let fast: HashSet<CIdeal> = CIdeal::enumerate(&l, &m, 10_000).unwrap().into_iter().collect();
            let slow: HashSet<CIdeal> = cideals_by_closure(&l, &m, 10_000).unwrap().into_iter().collect();
            assert_eq!(fast, slow);
        }
        assert_eq!(CIdeal::enumerate(&d4(), &d4(), 100).unwrap().len(), 16);
    }

    #[test]
    fn composition_examples() {
        let d4 = d4();
        let a = e(&d4, "a");
        let bottom = CIdeal::bottom(&d4, &d4);
        for x in CIdeal::enumerate(&d4, &d4, 100).unwrap() {
            assert_eq!(x.compose(&bottom), bottom);
        }
        let aa = CIdeal::oplus(&d4, &d4, a, a);
        assert_eq!(aa.compose(&aa), aa);
        for r in d4.elements() {
            let er = CIdeal::e_r(&d4, r);
            assert_eq!(er.compose(&er), er);
        }
    }

    #[test]
    fn entourage_predicates() {
        let d4 = d4();
        let (a, b) = (e(&d4, "a"), e(&d4, "b"));
        let top = CIdeal::top(&d4, &d4);
        assert!(top.is_entourage() && top.is_transitive() && top.is_finite_by_cover() && top.is_symmetric());
        let ea = CIdeal::e_r(&d4, a);
        assert!(ea.is_entourage() && ea.is_transitive() && ea.is_finite_by_cover());
        assert!(!ea.is_symmetric());
        assert_eq!(ea.inverse(), CIdeal::e_r(&d4, b));
        assert!(!CIdeal::oplus(&d4, &d4, a, a).is_entourage());
        let c3 = FiniteFrame::chain(3);
        let m = e(&c3, "a");
        assert!(!CIdeal::e_r(&c3, m).is_entourage());
        assert_eq!(CIdeal::e_r(&d4, d4.bottom()), top);
        assert_eq!(CIdeal::e_r(&d4, d4.top()), top);
    }

    #[test]
    fn e_r_membership_law() {
        for l in [d4(), FiniteFrame::chain(4), FiniteFrame::boolean(3)] {
            for r in l.elements() {
                let er = CIdeal::e_r(&l, r);
                let rs = l.pseudocomplement(r);
                let union = CIdeal::oplus(&l, &l, r, l.top()).join(&CIdeal::oplus(&l, &l, l.top(), rs));
                assert_eq!(er, union);
                for x in l.elements() {
                    for y in l.elements() {
                        assert_eq!(er.contains(x, y), l.le(x, r) || l.le(y, rs));
                    }
                }
            }
        }
    }

    #[test]
    fn rowmax_validation() {
        let d4 = d4();
        assert!(CIdeal::from_rowmax(&d4, &d4, vec![d4.top(); 4]).is_ok());
        assert!(CIdeal::from_rowmax(&d4, &d4, vec![d4.bottom(); 4]).is_err());
    }
}
