//! Frith frames (L, S): a frame with a join-dense bounded sublattice, and their morphisms.
//!
//! A join-dense sublattice of a finite frame is the whole frame, since it is closed under
//! finite joins. Constructors check join-density and then assert S = L.

use std::collections::HashMap;

use serde::Serialize;

use crate::caps::Caps;
use crate::completion::IdealLattice;
use crate::congruence::{is_generated_by_restriction, quotient, Congruence, CongruenceFrame};
use crate::entourage::CIdeal;
use crate::error::{Error, Result};
use crate::lattice::predicates::{compact_elements, frame_predicates};
use crate::lattice::{Elem, FiniteFrame, FrameHom, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrithFrame {
    frame: FiniteFrame,
    s: Sublattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrithPredicates {
    pub is_compact: bool,
    pub is_coherent: bool,
    pub s_is_compact_elements: bool,
    pub is_zero_dimensional: bool,
    pub is_symmetric: bool,
}

#[derive(Clone, Debug)]
pub struct Proximity {
    pub pairs: Vec<(Elem, Elem)>,
    pub interpolates: bool,
    pub recovers_s: bool,
    pub equals_order: bool,
}

#[derive(Clone, Debug)]
pub struct Symmetrization {
    pub object: FrithFrame,
    pub unit: FrithHom,
    pub congruences: CongruenceFrame,
}

impl FrithFrame {
    pub fn new(frame: &FiniteFrame, s: Sublattice) -> Result<FrithFrame> {
        if s.parent() != frame {
            return Err(Error::Precondition("lattice part lives in another frame".into()));
        }
        if let Some(x) = s.join_density_witness() {
            return Err(Error::NotJoinDense(frame.name(x).to_string()));
        }
        if !s.is_whole() {
            return Err(Error::Internal("join-dense sublattice of a finite frame is proper".into()));
        }
        Ok(FrithFrame { frame: frame.clone(), s })
    }

    /// (L, L).
    pub fn full(frame: &FiniteFrame) -> FrithFrame {
        FrithFrame { frame: frame.clone(), s: Sublattice::whole(frame) }
    }

    pub fn from_names(frame: &FiniteFrame, names: &[String]) -> Result<FrithFrame> {
        let mut members = Vec::new();
        for n in names {
            members.push(
                frame
                    .by_name(n)
                    .ok_or_else(|| Error::Precondition(format!("unknown element {n}")))?,
            );
        }
        FrithFrame::new(frame, Sublattice::new(frame, members)?)
    }

    /// The initial object (TWO, TWO).
    pub fn initial() -> FrithFrame {
        FrithFrame::full(&FiniteFrame::two())
    }

    /// The terminal object on the one-element frame.
    pub fn terminal() -> FrithFrame {
        FrithFrame::full(&FiniteFrame::trivial())
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn s(&self) -> &Sublattice {
        &self.s
    }

    pub fn is_symmetric(&self) -> bool {
        self.s.is_boolean()
    }

    pub fn predicates(&self) -> Result<FrithPredicates> {
        let l = &self.frame;
        let fp = frame_predicates(l, Some(&self.s))?;
        let k = compact_elements(l)?;
        let is_coherent = self.s.iter().all(|x| k.contains(&x));
        Ok(FrithPredicates {
            is_compact: fp.is_compact,
            is_coherent,
            s_is_compact_elements: is_coherent && k.len() == self.s.len(),
            is_zero_dimensional: self.s.iter().all(|x| l.is_complemented(x)),
            is_symmetric: self.is_symmetric(),
        })
    }

    /// a ⊲ b iff a ≤ s ≤ b for some s in S.
    pub fn proximity(&self) -> Proximity {
        let l = &self.frame;
        let rel = |a: Elem, b: Elem| self.s.iter().any(|s| l.le(a, s) && l.le(s, b));
        let mut pairs = Vec::new();
        for a in l.elements() {
            for b in l.elements() {
                if rel(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let interpolates = pairs
            .iter()
            .all(|&(a, b)| l.elements().any(|c| rel(a, c) && rel(c, c) && rel(c, b)));
        let recovers_s = l.elements().all(|a| rel(a, a) == self.s.contains(a));
        let equals_order = l.elements().all(|a| l.elements().all(|b| rel(a, b) == l.le(a, b)));
        Proximity { pairs, interpolates, recovers_s, equals_order }
    }

    /// (L₁ × L₂, S₁ × S₂) with its projections.
    pub fn product(&self, other: &FrithFrame) -> Result<(FrithFrame, FrithHom, FrithHom)> {
        let (p, coords) = self.frame.product(&other.frame)?;
        let obj = FrithFrame::full(&p);
        let p1 = FrameHom::from_fn(&p, &self.frame, |x| coords[x.index()].0);
        let p2 = FrameHom::from_fn(&p, &other.frame, |x| coords[x.index()].1);
        Ok((obj.clone(), FrithHom::new(&obj, self, p1)?, FrithHom::new(&obj, other, p2)?))
    }

    /// L₁ ⊕ L₂ as the frame of C-ideals of L₁ × L₂, with lattice part generated by the
    /// injected lattice parts.
    pub fn coproduct(&self, other: &FrithFrame, caps: &Caps) -> Result<(FrithFrame, FrithHom, FrithHom)> {
        let (l, m) = (&self.frame, &other.frame);
        let all = CIdeal::enumerate(l, m, caps.max_cideals)?;
        let index: HashMap<Vec<Elem>, usize> = all.iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
        let names: Vec<String> = all.iter().map(cideal_name).collect();
        let (frame, renaming) = FiniteFrame::from_lattice(
            names,
            |i, j| all[i].le(&all[j]),
            |i, j| index[&all[i].join(&all[j]).key()],
        )?;
        let at = |c: CIdeal| renaming[index[&c.key()]];
        let inj1 = FrameHom::from_fn(l, &frame, |a| at(CIdeal::oplus(l, m, a, m.top())));
        let inj2 = FrameHom::from_fn(m, &frame, |b| at(CIdeal::oplus(l, m, l.top(), b)));
        let gens = self.s.iter().map(|a| inj1.apply(a)).chain(other.s.iter().map(|b| inj2.apply(b)));
        let s = Sublattice::generated(&frame, gens);
        let obj = FrithFrame::new(&frame, s)?;
        Ok((obj.clone(), FrithHom::new(self, &obj, inj1)?, FrithHom::new(other, &obj, inj2)?))
    }

    /// (𝒞_S L, S̄) with S̄ generated by the ∇_s and Δ_s, and the unit ∇.
    pub fn fsym(&self, caps: &Caps) -> Result<Symmetrization> {
        let l = &self.frame;
        let cf = CongruenceFrame::relative(l, &self.s, caps)?;
        let alt = CongruenceFrame::relative_by_lattice_part(l, &self.s, caps)?;
        if alt.structure().len() != cf.structure().len() {
            return Err(Error::Internal("the two generator sets give different congruence frames".into()));
        }
        let k = cf.structure().clone();
        let gens: Vec<Elem> = self
            .s
            .iter()
            .flat_map(|s| [Some(cf.nabla(s)), cf.delta(s)])
            .flatten()
            .collect();
        let sbar = Sublattice::generated(&k, gens);
        if !sbar.is_boolean() {
            return Err(Error::Internal("symmetrized lattice part is not Boolean".into()));
        }
        let object = FrithFrame::new(&k, sbar)?;
        let unit = FrithHom::new(self, &object, cf.nabla_hom())?;
        Ok(Symmetrization { object, unit, congruences: cf })
    }

    /// (N, C): C the members of S complemented within S, N the subframe they generate,
    /// with its inclusion into (L, S).
    pub fn boolean_core(&self) -> Result<(FrithFrame, FrithHom)> {
        let c = self.s.complemented_members();
        let n = Sublattice::subframe_generated(&self.frame, c);
        let (nf, inc) = n.to_frame();
        let obj = FrithFrame::full(&nf);
        let counit = FrithHom::new(&obj, self, inc)?;
        Ok((obj, counit))
    }

    /// (Idl(S), S) for a bounded distributive lattice given as a sublattice.
    pub fn idl(s: &Sublattice, limit: usize) -> Result<FrithFrame> {
        let il = IdealLattice::new(s, limit)?;
        let obj = FrithFrame::full(il.frame());
        if !obj.predicates()?.s_is_compact_elements {
            return Err(Error::Internal("lattice part of an ideal frame differs from its compact elements".into()));
        }
        Ok(obj)
    }
}

fn cideal_name(c: &CIdeal) -> String {
    let (l, m) = (c.left(), c.right());
    let terms: Vec<(Elem, Elem)> = m
        .join_irreducibles()
        .into_iter()
        .map(|j| (c.row(j), j))
        .filter(|&(x, _)| x != l.bottom())
        .collect();
    let maximal: Vec<(Elem, Elem)> = terms
        .iter()
        .copied()
        .filter(|&(x, y)| {
            !terms
                .iter()
                .any(|&(x2, y2)| (x2, y2) != (x, y) && l.le(x, x2) && m.le(y, y2))
        })
        .collect();
    if maximal.is_empty() {
        return "0".into();
    }
    maximal
        .iter()
        .map(|&(x, y)| format!("{}⊕{}", l.name(x), m.name(y)))
        .collect::<Vec<_>>()
        .join("∨")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrithHom {
    dom: FrithFrame,
    cod: FrithFrame,
    hom: FrameHom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrithHomReport {
    pub is_mono: bool,
    pub is_extremal_epi: bool,
    pub is_regular_epi: bool,
    pub is_iso: bool,
}

impl FrithHom {
    pub fn new(dom: &FrithFrame, cod: &FrithFrame, hom: FrameHom) -> Result<FrithHom> {
        if hom.dom() != dom.frame() || hom.cod() != cod.frame() {
            return Err(Error::InvalidMorphism("frames do not match".into()));
        }
        if let Some(v) = hom.hom_violation() {
            return Err(Error::InvalidMorphism(v));
        }
        if let Some(s) = dom.s.iter().find(|&s| !cod.s.contains(hom.apply(s))) {
            return Err(Error::InvalidMorphism(format!(
                "{} is sent outside the target lattice part",
                dom.frame.name(s)
            )));
        }
        Ok(FrithHom { dom: dom.clone(), cod: cod.clone(), hom })
    }

    pub fn identity(f: &FrithFrame) -> FrithHom {
        FrithHom { dom: f.clone(), cod: f.clone(), hom: FrameHom::identity(f.frame()) }
    }

    pub fn dom(&self) -> &FrithFrame {
        &self.dom
    }

    pub fn cod(&self) -> &FrithFrame {
        &self.cod
    }

    pub fn hom(&self) -> &FrameHom {
        &self.hom
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.hom.apply(x)
    }

    /// g ∘ self.
    pub fn then(&self, g: &FrithHom) -> FrithHom {
        FrithHom { dom: self.dom.clone(), cod: g.cod.clone(), hom: self.hom.then(&g.hom) }
    }

    /// h[S] = T.
    pub fn is_extremal_epi(&self) -> bool {
        let img: Vec<Elem> = self.dom.s.iter().map(|s| self.apply(s)).collect();
        self.cod.s.iter().all(|t| img.contains(&t))
    }

    pub fn predicates(&self) -> FrithHomReport {
        let is_mono = self.hom.is_injective();
        let is_extremal_epi = self.is_extremal_epi();
        let is_regular_epi = is_extremal_epi && is_frith_congruence(&self.dom, &Congruence::kernel(&self.hom));
        FrithHomReport { is_mono, is_extremal_epi, is_regular_epi, is_iso: is_mono && is_extremal_epi }
    }

    pub fn enumerate(dom: &FrithFrame, cod: &FrithFrame, limit: usize) -> Result<Vec<FrithHom>> {
        Ok(FrameHom::enumerate(dom.frame(), cod.frame(), limit)?
            .into_iter()
            .filter_map(|h| FrithHom::new(dom, cod, h).ok())
            .collect())
    }
}

/// θ is generated by its restriction to S × S.
pub fn is_frith_congruence(f: &FrithFrame, theta: &Congruence) -> bool {
    is_generated_by_restriction(f.s(), theta)
}

/// The subframe generated by {s ∈ S : h₁(s) = h₂(s)} with its inclusion.
pub fn equalizer(h1: &FrithHom, h2: &FrithHom) -> Result<(FrithFrame, FrithHom)> {
    if h1.dom != h2.dom || h1.cod != h2.cod {
        return Err(Error::Precondition("morphisms are not parallel".into()));
    }
    let f = &h1.dom;
    let agree: Vec<Elem> = f.s.iter().filter(|&s| h1.apply(s) == h2.apply(s)).collect();
    let k = Sublattice::subframe_generated(f.frame(), agree);
    let (kf, inc) = k.to_frame();
    let obj = FrithFrame::full(&kf);
    let e = FrithHom::new(&obj, f, inc)?;
    Ok((obj, e))
}

/// Quotient of the codomain by the congruence generated by {(h₁(a), h₂(a))}.
pub fn coequalizer(h1: &FrithHom, h2: &FrithHom) -> Result<FrithHom> {
    if h1.dom != h2.dom || h1.cod != h2.cod {
        return Err(Error::Precondition("morphisms are not parallel".into()));
    }
    let m = h1.cod.frame();
    let theta = Congruence::generated(m, h1.dom.frame().elements().map(|a| (h1.apply(a), h2.apply(a))));
    let (q, qh) = quotient(m, &theta);
    let image = h1.cod.s.iter().map(|t| qh.apply(t));
    let obj = FrithFrame::new(&q, Sublattice::new(&q, image)?)?;
    FrithHom::new(&h1.cod, &obj, qh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_isomorphic;

    fn e(l: &FiniteFrame, n: &str) -> Elem {
        l.by_name(n).unwrap()
    }

    fn c3() -> FrithFrame {
        FrithFrame::full(&FiniteFrame::chain(3))
    }

    fn d4() -> FrithFrame {
        FrithFrame::full(&FiniteFrame::boolean(2))
    }

    fn two() -> FrithFrame {
        FrithFrame::initial()
    }

    #[test]
    fn construction_checks_join_density() {
        let d4 = FiniteFrame::boolean(2);
        let err = FrithFrame::new(&d4, Sublattice::bounds(&d4)).unwrap_err();
        assert!(matches!(err, Error::NotJoinDense(_)));
        assert!(FrithFrame::from_names(&d4, &["0".into(), "a".into(), "b".into(), "1".into()]).is_ok());
    }

    #[test]
    fn morphism_predicates() {
        let (c3, two) = (c3(), two());
        let id = FrithHom::identity(&c3);
        assert!(id.predicates().is_iso);
        let l = c3.frame();
        let m = e(l, "a");
        let up = FrameHom::from_fn(l, two.frame(), |x| if x == l.bottom() { two.frame().bottom() } else { two.frame().top() });
        let up = FrithHom::new(&c3, &two, up).unwrap();
        let r = up.predicates();
        assert!(r.is_extremal_epi && r.is_regular_epi && !r.is_mono);
        let _ = m;
        let inc = FrameHom::from_fn(two.frame(), l, |x| if x == two.frame().top() { l.top() } else { l.bottom() });
        let inc = FrithHom::new(&two, &c3, inc).unwrap();
        let r = inc.predicates();
        assert!(r.is_mono && !r.is_extremal_epi && !r.is_iso);
    }

    #[test]
    fn products() {
        let (p, _, _) = two().product(&two()).unwrap();
        assert!(is_isomorphic(p.frame(), d4().frame()));
        let (p, p1, _) = c3().product(&FrithFrame::terminal()).unwrap();
        assert!(is_isomorphic(p.frame(), c3().frame()));
        assert!(p1.predicates().is_iso);
        let (p, _, _) = c3().product(&two()).unwrap();
        assert_eq!(p.frame().len(), 6);
    }

    #[test]
    fn coproducts() {
        let caps = Caps::default();
        let (t, i1, i2) = two().coproduct(&two(), &caps).unwrap();
        assert!(is_isomorphic(t.frame(), two().frame()));
        assert!(i1.predicates().is_iso && i2.predicates().is_iso);
        for x in [c3(), d4()] {
            let (y, i1, _) = x.coproduct(&two(), &caps).unwrap();
            assert!(is_isomorphic(y.frame(), x.frame()));
            assert!(i1.predicates().is_iso);
        }
        let (y, _, _) = d4().coproduct(&d4(), &caps).unwrap();
        assert_eq!(y.frame().len(), 16);
        let (y, _, _) = c3().coproduct(&c3(), &caps).unwrap();
        assert_eq!(y.frame().len(), 6);
    }

    #[test]
    fn equalizers_and_coequalizers() {
        let (d4, two) = (d4(), two());
        let homs = FrithHom::enumerate(&d4, &two, 100).unwrap();
        assert_eq!(homs.len(), 2);
        let (k, _) = equalizer(&homs[0], &homs[0]).unwrap();
        assert_eq!(k.frame().len(), 4);
        let (k, incl) = equalizer(&homs[0], &homs[1]).unwrap();
        assert_eq!(k.frame().len(), 2);
        assert!(incl.predicates().is_mono);

        let q = coequalizer(&homs[0], &homs[0]).unwrap();
        assert!(q.predicates().is_iso);
        let c3 = c3();
        let picks = FrithHom::enumerate(&c3, &d4, 100).unwrap();
        let m = e(c3.frame(), "a");
        let (a, b) = (e(d4.frame(), "a"), e(d4.frame(), "b"));
        let pa = picks.iter().find(|h| h.apply(m) == a).unwrap();
        let pb = picks.iter().find(|h| h.apply(m) == b).unwrap();
        let q = coequalizer(pa, pb).unwrap();
        assert!(q.cod().frame().is_trivial());
    }

    #[test]
    fn symmetrization_and_core() {
        let caps = Caps::default();
        let s = two().fsym(&caps).unwrap();
        assert!(is_isomorphic(s.object.frame(), two().frame()));
        let s = c3().fsym(&caps).unwrap();
        assert!(is_isomorphic(s.object.frame(), d4().frame()));
        assert!(s.object.is_symmetric());
        let again = s.object.fsym(&caps).unwrap();
        assert!(is_isomorphic(again.object.frame(), s.object.frame()));

        let (core, counit) = c3().boolean_core().unwrap();
        assert_eq!(core.frame().len(), 2);
        assert!(counit.predicates().is_mono);
        let (core, counit) = d4().boolean_core().unwrap();
        assert_eq!(core.frame().len(), 4);
        assert!(counit.predicates().is_iso);
    }

    #[test]
    fn ideal_frames_and_predicates() {
        for f in [two(), c3(), d4()] {
            let i = FrithFrame::idl(f.s(), 1000).unwrap();
            assert!(is_isomorphic(i.frame(), f.frame()));
        }
        let p = c3().predicates().unwrap();
        assert!(p.is_coherent && p.is_compact && !p.is_zero_dimensional && !p.is_symmetric);
        for f in [d4(), two()] {
            let p = f.predicates().unwrap();
            assert!(p.is_coherent && p.is_compact && p.is_zero_dimensional && p.is_symmetric);
        }
    }

    #[test]
    fn proximity_is_the_order() {
        for f in [two(), c3(), d4()] {
            let p = f.proximity();
            assert!(p.interpolates && p.recovers_s && p.equals_order);
        }
    }
}
