use std::fmt;

use serde::Serialize;

use super::frame::{Elem, FiniteFrame};
use super::poset::{bit, ones};
use super::sublattice::Sublattice;
use crate::error::{Error, Result};

/// A map between frames given as an element table. Validity is a separate check.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FrameHom {
    dom: FiniteFrame,
    cod: FiniteFrame,
    map: Vec<Elem>,
}

impl fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .dom
            .elements()
            .map(|x| format!("{}↦{}", self.dom.name(x), self.cod.name(self.apply(x))))
            .collect();
        write!(f, "FrameHom[{}]", parts.join(", "))
    }
}

/// Summary of a map's properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub is_frame_hom: bool,
    pub is_injective: bool,
    pub is_surjective: bool,
    pub is_dense: bool,
    /// Names of the image elements.
    pub image: Vec<String>,
}

impl FrameHom {
    /// Checks totality only.
    pub fn new(dom: FiniteFrame, cod: FiniteFrame, map: Vec<Elem>) -> Result<FrameHom> {
        if map.len() != dom.len() {
            return Err(Error::InvalidMorphism(format!(
                "map has {} entries for {} elements",
                map.len(),
                dom.len()
            )));
        }
        if let Some(bad) = map.iter().find(|e| e.index() >= cod.len()) {
            return Err(Error::InvalidMorphism(format!("{bad} is not a codomain element")));
        }
        Ok(FrameHom { dom, cod, map })
    }

    /// Checks totality and the frame homomorphism laws.
    pub fn checked(dom: FiniteFrame, cod: FiniteFrame, map: Vec<Elem>) -> Result<FrameHom> {
        let h = FrameHom::new(dom, cod, map)?;
        if let Some(why) = h.hom_violation() {
            return Err(Error::InvalidMorphism(why));
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(dom: FiniteFrame, cod: FiniteFrame, map: Vec<Elem>) -> FrameHom {
        debug_assert_eq!(map.len(), dom.len());
        FrameHom { dom, cod, map }
    }

    pub fn from_fn(dom: &FiniteFrame, cod: &FiniteFrame, f: impl Fn(Elem) -> Elem) -> FrameHom {
        let map = dom.elements().map(f).collect();
        FrameHom::new_unchecked(dom.clone(), cod.clone(), map)
    }

    pub fn identity(l: &FiniteFrame) -> FrameHom {
        FrameHom::from_fn(l, l, |x| x)
    }

    pub fn dom(&self) -> &FiniteFrame {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteFrame {
        &self.cod
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x.index()]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FrameHom) -> FrameHom {
        assert!(self.cod == g.dom, "composition of non-composable maps");
        FrameHom::from_fn(&self.dom, &g.cod, |x| g.apply(self.apply(x)))
    }

    /// First failing homomorphism law, if any.
    pub fn hom_violation(&self) -> Option<String> {
        let (l, m) = (&self.dom, &self.cod);
        if self.apply(l.bottom()) != m.bottom() {
            return Some("0 is not preserved".into());
        }
        if self.apply(l.top()) != m.top() {
            return Some("1 is not preserved".into());
        }
        for x in l.elements() {
            for y in l.elements() {
                if y < x {
                    continue;
                }
                let (hx, hy) = (self.apply(x), self.apply(y));
                if self.apply(l.meet(x, y)) != m.meet(hx, hy) {
                    return Some(format!("meet of {} and {} is not preserved", l.name(x), l.name(y)));
                }
                if self.apply(l.join(x, y)) != m.join(hx, hy) {
                    return Some(format!("join of {} and {} is not preserved", l.name(x), l.name(y)));
                }
            }
        }
        None
    }

    pub fn is_frame_hom(&self) -> bool {
        self.hom_violation().is_none()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.map.iter().all(|y| !std::mem::replace(&mut seen[y.index()], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for y in &self.map {
            seen[y.index()] = true;
        }
        seen.into_iter().all(|b| b)
    }

    /// h(a) = 0 only for a = 0.
    pub fn is_dense(&self) -> bool {
        self.dom
            .elements()
            .all(|a| a == self.dom.bottom() || self.apply(a) != self.cod.bottom())
    }

    pub fn image(&self) -> Vec<Elem> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Image as a sublattice of the codomain (for valid homs).
    pub fn image_sublattice(&self) -> Result<Sublattice> {
        Sublattice::new(&self.cod, self.image())
    }

    pub fn validate(&self) -> HomReport {
        HomReport {
            is_frame_hom: self.is_frame_hom(),
            is_injective: self.is_injective(),
            is_surjective: self.is_surjective(),
            is_dense: self.is_dense(),
            image: self.image().into_iter().map(|e| self.cod.name(e).to_string()).collect(),
        }
    }

    /// Two-sided inverse when `self` is a bijective frame hom.
    pub fn inverse(&self) -> Option<FrameHom> {
        if !self.is_injective() || !self.is_surjective() {
            return None;
        }
        let mut inv = vec![self.dom.bottom(); self.cod.len()];
        for x in self.dom.elements() {
            inv[self.apply(x).index()] = x;
        }
        Some(FrameHom::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }

    /// All frame homs `dom → cod`, via monotone maps between join-irreducible posets
    /// in the opposite direction.
    pub fn enumerate(dom: &FiniteFrame, cod: &FiniteFrame, limit: usize) -> Result<Vec<FrameHom>> {
        let pj = dom.jir();
        let qj = cod.jir();
        let order = qj.linear_extension();
        let mut phi = vec![usize::MAX; qj.size()];
        let mut out = Vec::new();
        let mut err = None;
        enumerate_monotone(pj, qj, &order, 0, &mut phi, &mut |phi| {
            if out.len() >= limit {
                err = Some(Error::CapExceeded { what: "frame homomorphisms", limit });
                return false;
            }
            let map = dom
                .elements()
                .map(|x| {
                    let xm = dom.mask(x);
                    let m = (0..qj.size()).filter(|&q| xm & bit(phi[q]) != 0).fold(0, |m, q| m | bit(q));
                    cod.from_mask(m).expect("preimage of a down-set is a down-set")
                })
                .collect();
            out.push(FrameHom::new_unchecked(dom.clone(), cod.clone(), map));
            true
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    /// All frame homs `dom → cod` by direct backtracking over element images.
    pub fn enumerate_brute(dom: &FiniteFrame, cod: &FiniteFrame) -> Vec<FrameHom> {
        let n = dom.len();
        let mut map = vec![cod.bottom(); n];
        let mut out = Vec::new();
        brute_rec(dom, cod, 0, &mut map, &mut out);
        out
    }

    /// A frame isomorphism, found through the join-irreducible posets.
    pub fn find_isomorphism(a: &FiniteFrame, b: &FiniteFrame) -> Option<FrameHom> {
        if a.len() != b.len() {
            return None;
        }
        let pm = a.jir().find_isomorphism(b.jir())?;
        Some(FrameHom::from_fn(a, b, |x| {
            let m = ones(a.mask(x)).fold(0u64, |m, p| m | bit(pm[p]));
            b.from_mask(m).expect("order isomorphism maps down-sets to down-sets")
        }))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_frame_hom() && self.is_injective() && self.is_surjective()
    }
}

pub fn is_isomorphic(a: &FiniteFrame, b: &FiniteFrame) -> bool {
    FrameHom::find_isomorphism(a, b).is_some()
}

fn enumerate_monotone(
    target: &super::Poset,
    source: &super::Poset,
    order: &[usize],
    k: usize,
    phi: &mut [usize],
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == order.len() {
        return emit(phi);
    }
    let q = order[k];
    let lower = ones(source.below(q) & !bit(q));
    let lower: Vec<usize> = lower.collect();
    for p in 0..target.size() {
        if lower.iter().all(|&q2| target.le(phi[q2], p)) {
            phi[q] = p;
            if !enumerate_monotone(target, source, order, k + 1, phi, emit) {
                return false;
            }
        }
    }
    phi[q] = usize::MAX;
    true
}

fn brute_rec(dom: &FiniteFrame, cod: &FiniteFrame, k: usize, map: &mut [Elem], out: &mut Vec<FrameHom>) {
    let n = dom.len();
    if k == n {
        let h = FrameHom::new_unchecked(dom.clone(), cod.clone(), map.to_vec());
        if h.is_frame_hom() {
            out.push(h);
        }
        return;
    }
    let x = Elem::new(k);
    let candidates: Vec<Elem> = if k == 0 {
        vec![cod.bottom()]
    } else if k == n - 1 {
        vec![cod.top()]
    } else {
        cod.elements().collect()
    };
    for y in candidates {
        let ok = (0..k).map(Elem::new).all(|z| {
            let hz = map[z.index()];
            (!dom.le(z, x) || cod.le(hz, y)) && map[dom.meet(x, z).index()] == cod.meet(y, hz) && {
                let j = dom.join(x, z);
                j.index() > k || (if j == x { cod.join(y, hz) == y } else { map[j.index()] == cod.join(y, hz) })
            }
        });
        if ok {
            map[k] = y;
            brute_rec(dom, cod, k + 1, map, out);
        }
    }
}
