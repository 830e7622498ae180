use std::fmt;

use fixedbitset::FixedBitSet;

use super::frame::{Elem, FiniteFrame};
use super::hom::FrameHom;
use crate::error::{Error, Result};

/// A bounded sublattice of a frame.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    parent: FiniteFrame,
    members: FixedBitSet,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(|e| self.parent.name(e)).collect();
        write!(f, "Sublattice{{{}}}", names.join(", "))
    }
}

fn to_bits(l: &FiniteFrame, it: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(l.len());
    for e in it {
        s.insert(e.index());
    }
    s
}

impl Sublattice {
    /// Checked constructor: must contain 0, 1 and be closed under binary meet and join.
    pub fn new(parent: &FiniteFrame, members: impl IntoIterator<Item = Elem>) -> Result<Sublattice> {
        let members = to_bits(parent, members);
        let s = Sublattice { parent: parent.clone(), members };
        if !s.contains(parent.bottom()) || !s.contains(parent.top()) {
            return Err(Error::Precondition("sublattice must contain 0 and 1".into()));
        }
        for x in s.iter() {
            for y in s.iter() {
                for z in [parent.meet(x, y), parent.join(x, y)] {
                    if !s.contains(z) {
                        return Err(Error::Precondition(format!(
                            "{} is missing from the sublattice",
                            parent.name(z)
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_bits_unchecked(parent: &FiniteFrame, members: FixedBitSet) -> Sublattice {
        Sublattice { parent: parent.clone(), members }
    }

    pub fn whole(parent: &FiniteFrame) -> Sublattice {
        Sublattice::from_bits_unchecked(parent, to_bits(parent, parent.elements()))
    }

    /// The sublattice {0, 1}.
    pub fn bounds(parent: &FiniteFrame) -> Sublattice {
        Sublattice::from_bits_unchecked(parent, to_bits(parent, [parent.bottom(), parent.top()]))
    }

    /// Least bounded sublattice containing `r`, by pairwise closure to a fixpoint.
    pub fn generated(parent: &FiniteFrame, r: impl IntoIterator<Item = Elem>) -> Sublattice {
        let mut members: Vec<Elem> = vec![parent.bottom(), parent.top()];
        let mut bits = to_bits(parent, members.iter().copied());
        for e in r {
            if !bits.put(e.index()) {
                members.push(e);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            let mut j = 0;
            while j <= i {
                let y = members[j];
                for z in [parent.meet(x, y), parent.join(x, y)] {
                    if !bits.put(z.index()) {
                        members.push(z);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        Sublattice::from_bits_unchecked(parent, bits)
    }

    /// Least subframe containing `r`: all joins of finite meets of members of `r`.
    pub fn subframe_generated(parent: &FiniteFrame, r: impl IntoIterator<Item = Elem>) -> Sublattice {
        let mut meets = to_bits(parent, [parent.top()]);
        for e in r {
            let current: Vec<usize> = meets.ones().collect();
            for m in current {
                meets.insert(parent.meet(Elem::new(m), e).index());
            }
            meets.insert(e.index());
        }
        let mut joins = to_bits(parent, [parent.bottom()]);
        for m in meets.ones() {
            let current: Vec<usize> = joins.ones().collect();
            for j in current {
                joins.insert(parent.join(Elem::new(j), Elem::new(m)).index());
            }
        }
        Sublattice::from_bits_unchecked(parent, joins)
    }

    pub fn parent(&self) -> &FiniteFrame {
        &self.parent
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(Elem::new)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.parent.len()
    }

    pub fn is_subset(&self, other: &Sublattice) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Is `x` a join of members of the sublattice?
    pub fn is_join_of_members(&self, x: Elem) -> bool {
        let l = &self.parent;
        l.join_all(self.iter().filter(|&s| l.le(s, x))) == x
    }

    /// Every element of the parent is a join of members.
    pub fn is_join_dense(&self) -> bool {
        self.parent.elements().all(|x| self.is_join_of_members(x))
    }

    /// First element that is not a join of members.
    pub fn join_density_witness(&self) -> Option<Elem> {
        self.parent.elements().find(|&x| !self.is_join_of_members(x))
    }

    /// The complement of `x` inside the sublattice, if any.
    pub fn complement_within(&self, x: Elem) -> Option<Elem> {
        let l = &self.parent;
        self.iter()
            .find(|&y| l.meet(x, y) == l.bottom() && l.join(x, y) == l.top())
    }

    /// Members complemented within the sublattice itself.
    pub fn complemented_members(&self) -> Vec<Elem> {
        self.iter().filter(|&x| self.complement_within(x).is_some()).collect()
    }

    /// Every member has a complement in the sublattice.
    pub fn is_boolean(&self) -> bool {
        self.iter().all(|x| self.complement_within(x).is_some())
    }

    /// The sublattice as a frame in its own right, with its inclusion into the parent.
    pub fn to_frame(&self) -> (FiniteFrame, FrameHom) {
        let items: Vec<Elem> = self.iter().collect();
        let pos = |e: Elem| items.iter().position(|&x| x == e).expect("closed");
        let l = &self.parent;
        let names: Vec<String> = items.iter().map(|&e| l.name(e).to_string()).collect();
        let (frame, renaming) = FiniteFrame::from_lattice(
            names,
            |i, j| l.le(items[i], items[j]),
            |i, j| pos(l.join(items[i], items[j])),
        )
        .expect("a sublattice of a distributive lattice is distributive");
        let mut map = vec![l.bottom(); frame.len()];
        for (i, &e) in items.iter().enumerate() {
            map[renaming[i].index()] = e;
        }
        let inc = FrameHom::new_unchecked(frame.clone(), l.clone(), map);
        (frame, inc)
    }
}

/// The complemented elements B(L) as a sublattice.
pub fn complemented_elements(l: &FiniteFrame) -> Sublattice {
    Sublattice::from_bits_unchecked(l, to_bits(l, l.elements().filter(|&a| l.is_complemented(a))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(l: &FiniteFrame, n: &str) -> Elem {
        l.by_name(n).unwrap()
    }

    #[test]
    fn generated_examples() {
        let d4 = FiniteFrame::boolean(2);
        assert_eq!(Sublattice::generated(&d4, []).len(), 2);
        assert_eq!(Sublattice::generated(&d4, [e(&d4, "a")]).len(), 3);
        assert!(Sublattice::generated(&d4, [e(&d4, "a"), e(&d4, "b")]).is_whole());
        assert_eq!(Sublattice::subframe_generated(&d4, [e(&d4, "a")]).len(), 3);
        assert!(Sublattice::subframe_generated(&d4, d4.elements()).is_whole());
        let b3 = FiniteFrame::boolean(3);
        let atoms = b3.join_irreducibles();
        assert!(Sublattice::subframe_generated(&b3, atoms.clone()).is_whole());
        assert!(Sublattice::generated(&b3, atoms).is_whole());
    }

    #[test]
    fn two_closures_agree_and_validate() {
        let l = FiniteFrame::from_poset(
            crate::lattice::Poset::new(
                (0..4).map(crate::lattice::poset::default_point_name).collect(),
                &[(0, 2), (1, 2), (1, 3)],
            )
            .unwrap(),
        )
        .unwrap();
        let all: Vec<Elem> = l.elements().collect();
        for i in 0..all.len() {
            for j in 0..all.len() {
                let r = [all[i], all[j]];
                let a = Sublattice::generated(&l, r);
                let b = Sublattice::subframe_generated(&l, r);
                assert_eq!(a, b);
                assert!(Sublattice::new(&l, a.iter()).is_ok());
            }
        }
    }

    #[test]
    fn complemented_sublattice_and_density() {
        let c3 = FiniteFrame::chain(3);
        assert_eq!(complemented_elements(&c3).len(), 2);
        let d4 = FiniteFrame::boolean(2);
        assert!(complemented_elements(&d4).is_whole());
        let s = Sublattice::generated(&d4, [e(&d4, "a")]);
        assert!(!s.is_join_dense());
        assert_eq!(s.join_density_witness(), Some(e(&d4, "b")));
        assert!(Sublattice::new(&d4, [e(&d4, "a")]).is_err());
        assert!(Sublattice::new(&d4, [d4.bottom(), e(&d4, "a"), e(&d4, "b"), d4.top()]).is_ok());
    }

    #[test]
    fn to_frame_keeps_names() {
        let d4 = FiniteFrame::boolean(2);
        let s = Sublattice::generated(&d4, [e(&d4, "a")]);
        let (f, inc) = s.to_frame();
        assert_eq!(f.len(), 3);
        assert!(inc.is_frame_hom());
        assert!(f.by_name("a").is_some());
    }
}
