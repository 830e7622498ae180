use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::frame::{Elem, FiniteFrame};
use super::sublattice::{complemented_elements, Sublattice};
use crate::closure::closed_sets;
use crate::error::Result;

/// All ideals of `s` (down-closed within `s`, closed under binary joins, containing 0),
/// found by closure enumeration rather than through principal ideals.
pub fn ideals_of(s: &Sublattice, limit: usize) -> Result<Vec<Vec<Elem>>> {
    let l = s.parent();
    let items: Vec<Elem> = s.iter().collect();
    let k = items.len();
    let pos = |e: Elem| items.iter().position(|&x| x == e).expect("member");
    let zero = pos(l.bottom());
    let close = |seed: &FixedBitSet| {
        let mut cur = seed.clone();
        cur.insert(zero);
        loop {
            let mut next = cur.clone();
            for i in cur.ones() {
                for (j, &y) in items.iter().enumerate() {
                    if l.le(y, items[i]) {
                        next.insert(j);
                    }
                }
                for j in cur.ones() {
                    next.insert(pos(l.join(items[i], items[j])));
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    };
    let sets = closed_sets(k, close, limit, "ideals")?;
    Ok(sets
        .into_iter()
        .map(|b| b.ones().map(|i| items[i]).collect())
        .collect())
}

/// Elements `a` such that every ideal of `s` whose join lies above `a` has a member above `a`.
pub fn s_compact_elements(s: &Sublattice) -> Result<Vec<Elem>> {
    let l = s.parent();
    let ideals = ideals_of(s, usize::MAX)?;
    Ok(l.elements()
        .filter(|&a| {
            ideals.iter().all(|ideal| {
                !l.le(a, l.join_all(ideal.iter().copied())) || ideal.iter().any(|&x| l.le(a, x))
            })
        })
        .collect())
}

/// Compact elements K(L), judged against every ideal of L.
pub fn compact_elements(l: &FiniteFrame) -> Result<Vec<Elem>> {
    s_compact_elements(&Sublattice::whole(l))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramePredicates {
    pub is_compact: bool,
    pub compact_elements: Vec<String>,
    pub is_coherent: bool,
    pub is_zero_dimensional: bool,
    pub is_join_dense: Option<bool>,
    pub s_compact_elements: Option<Vec<String>>,
}

fn is_sublattice(l: &FiniteFrame, set: &[Elem]) -> bool {
    Sublattice::new(l, set.iter().copied()).is_ok()
}

/// Compactness, coherence and zero-dimensionality of `l`, plus join-density and
/// S-compactness for a given sublattice.
pub fn frame_predicates(l: &FiniteFrame, s: Option<&Sublattice>) -> Result<FramePredicates> {
    let k = compact_elements(l)?;
    let names = |v: &[Elem]| v.iter().map(|&e| l.name(e).to_string()).collect::<Vec<_>>();
    let is_compact = k.contains(&l.top());
    let is_coherent = is_sublattice(l, &k)
        && Sublattice::new(l, k.iter().copied()).map(|ks| ks.is_join_dense()).unwrap_or(false);
    let is_zero_dimensional = complemented_elements(l).is_join_dense();
    let (is_join_dense, s_compact) = match s {
        Some(s) => (Some(s.is_join_dense()), Some(names(&s_compact_elements(s)?))),
        None => (None, None),
    };
    Ok(FramePredicates {
        is_compact,
        compact_elements: names(&k),
        is_coherent,
        is_zero_dimensional,
        is_join_dense,
        s_compact_elements: s_compact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_frames_are_compact_everywhere() {
        for l in [FiniteFrame::two(), FiniteFrame::chain(4), FiniteFrame::boolean(3)] {
            assert_eq!(compact_elements(&l).unwrap().len(), l.len());
            let p = frame_predicates(&l, None).unwrap();
            assert!(p.is_compact && p.is_coherent);
        }
    }

    #[test]
    fn ideals_of_c3_are_principal() {
        let c3 = FiniteFrame::chain(3);
        let ideals = ideals_of(&Sublattice::whole(&c3), 100).unwrap();
        assert_eq!(ideals.len(), 3);
    }

    #[test]
    fn join_density_and_s_compactness() {
        let d4 = FiniteFrame::boolean(2);
        let a = d4.by_name("a").unwrap();
        let s = Sublattice::generated(&d4, [a]);
        let p = frame_predicates(&d4, Some(&s)).unwrap();
        assert_eq!(p.is_join_dense, Some(false));
        let c3 = FiniteFrame::chain(3);
        let p = frame_predicates(&c3, Some(&Sublattice::whole(&c3))).unwrap();
        assert!(p.is_coherent && !p.is_zero_dimensional);
        assert_eq!(p.s_compact_elements.unwrap().len(), 3);
    }
}
