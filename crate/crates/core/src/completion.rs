//! Ideal completions, the completion map c with its adjoint, the λ map, and Cauchy maps.

use std::collections::HashSet;

use serde::Serialize;

use crate::caps::Caps;
use crate::congruence::{extend_hom, lift_hom, CongruenceFrame};
use crate::entourage::QuasiUniformity;
use crate::error::{Error, Result};
use crate::frith::{FrithFrame, FrithHom};
use crate::lattice::predicates::ideals_of;
use crate::lattice::{is_isomorphic, Elem, FiniteFrame, FrameHom, Sublattice};

/// Idl(S) for a finite bounded sublattice S, enumerated generically.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    base: Sublattice,
    frame: FiniteFrame,
    ideals: Vec<Vec<Elem>>,
}

impl IdealLattice {
    pub fn new(s: &Sublattice, limit: usize) -> Result<IdealLattice> {
        let l = s.parent();
        let found = ideals_of(s, limit)?;
        let sets: Vec<HashSet<Elem>> = found.iter().map(|i| i.iter().copied().collect()).collect();
        let tops: Vec<Elem> = found.iter().map(|i| l.join_all(i.iter().copied())).collect();
        for (set, &t) in sets.iter().zip(&tops) {
            if !set.contains(&t) {
                return Err(Error::Internal(format!("non-principal ideal below {}", l.name(t))));
            }
        }
        let names: Vec<String> = tops.iter().map(|&t| format!("↓{}", l.name(t))).collect();
        let (frame, renaming) = FiniteFrame::from_lattice(
            names,
            |i, j| sets[i].is_subset(&sets[j]),
            |i, j| {
                (0..sets.len())
                    .filter(|&k| sets[i].is_subset(&sets[k]) && sets[j].is_subset(&sets[k]))
                    .min_by_key(|&k| sets[k].len())
                    .expect("the whole lattice is an ideal")
            },
        )?;
        let mut ideals = vec![Vec::new(); frame.len()];
        for (i, ideal) in found.into_iter().enumerate() {
            ideals[renaming[i].index()] = ideal;
        }
        Ok(IdealLattice { base: s.clone(), frame, ideals })
    }

    pub fn base(&self) -> &Sublattice {
        &self.base
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn ideal(&self, j: Elem) -> &[Elem] {
        &self.ideals[j.index()]
    }

    /// ⋁J in the parent of S.
    pub fn join_of(&self, j: Elem) -> Elem {
        self.base.parent().join_all(self.ideal(j).iter().copied())
    }

    /// ↓s for a member s of S.
    pub fn principal(&self, s: Elem) -> Option<Elem> {
        if !self.base.contains(s) {
            return None;
        }
        self.frame.elements().find(|&j| self.join_of(j) == s)
    }

    /// Every ideal is principal, so ↓ is a bijection S → Idl(S).
    pub fn principal_is_bijective(&self) -> bool {
        let images: HashSet<Elem> = self.base.iter().filter_map(|s| self.principal(s)).collect();
        images.len() == self.base.len() && images.len() == self.frame.len()
    }

    /// ĥ(J) = ⋁h[J] for a lattice map h defined on S.
    pub fn extend(&self, cod: &FiniteFrame, h: impl Fn(Elem) -> Elem) -> FrameHom {
        FrameHom::from_fn(&self.frame, cod, |j| cod.join_all(self.ideal(j).iter().map(|&s| h(s))))
    }
}

/// The completion map c: (Idl S, S) ↠ (L, S), J ↦ ⋁J, and its right adjoint.
#[derive(Clone, Debug)]
pub struct CompletionMap {
    pub ideals: IdealLattice,
    pub c: FrithHom,
    /// c*(a) = ↓a ∩ S, as an element of Idl(S).
    pub c_star: Vec<Elem>,
    pub star_formula_agrees: bool,
    pub galois_law: bool,
    pub right_inverse: bool,
}

pub fn c_and_c_star(f: &FrithFrame, caps: &Caps) -> Result<CompletionMap> {
    let l = f.frame();
    let ideals = IdealLattice::new(f.s(), caps.max_elements)?;
    let il = ideals.frame().clone();
    let c = FrithHom::new(&FrithFrame::full(&il), f, FrameHom::from_fn(&il, l, |j| ideals.join_of(j)))?;
    let mut c_star = Vec::with_capacity(l.len());
    let mut star_formula_agrees = true;
    for a in l.elements() {
        let members: HashSet<Elem> = f.s().iter().filter(|&s| l.le(s, a)).collect();
        let by_formula = il
            .elements()
            .find(|&j| ideals.ideal(j).iter().copied().collect::<HashSet<_>>() == members)
            .ok_or_else(|| Error::Internal(format!("↓{} ∩ S is not an ideal", l.name(a))))?;
        let by_adjunction = il.join_all(il.elements().filter(|&j| l.le(c.apply(j), a)));
        star_formula_agrees &= by_formula == by_adjunction;
        c_star.push(by_formula);
    }
    let galois_law = il
        .elements()
        .all(|j| l.elements().all(|a| l.le(c.apply(j), a) == il.le(j, c_star[a.index()])));
    let right_inverse = l.elements().all(|a| c.apply(c_star[a.index()]) == a);
    Ok(CompletionMap { ideals, c, c_star, star_formula_agrees, galois_law, right_inverse })
}

/// A function from a Frith frame into a frame, to be classified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CauchyCandidate {
    pub dom: FrithFrame,
    pub cod: FiniteFrame,
    pub map: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyReport {
    pub restricts_to_lattice_hom: bool,
    pub determined_by_s: bool,
    pub s_images_complemented: bool,
    pub is_cauchy: bool,
    pub is_frame_hom: bool,
    /// The quasi-uniform conditions against ℰ_B, for symmetric domains.
    pub quasi_uniform: Option<QuCauchyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuCauchyReport {
    pub bounded_meet_hom: bool,
    pub below_witness_join: bool,
    pub entourage_covers: bool,
    pub is_cauchy: bool,
    pub agrees: bool,
}

impl CauchyCandidate {
    pub fn new(dom: &FrithFrame, cod: &FiniteFrame, map: Vec<Elem>) -> Result<CauchyCandidate> {
        if map.len() != dom.frame().len() || map.iter().any(|e| e.index() >= cod.len()) {
            return Err(Error::Precondition("map is not total".into()));
        }
        Ok(CauchyCandidate { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.index()]
    }

    pub fn report(&self) -> Result<CauchyReport> {
        let (l, m, s) = (self.dom.frame(), &self.cod, self.dom.s());
        let phi = |a: Elem| self.apply(a);
        let c1 = phi(l.bottom()) == m.bottom()
            && phi(l.top()) == m.top()
            && s.iter().all(|x| {
                s.iter()
                    .all(|y| phi(l.meet(x, y)) == m.meet(phi(x), phi(y)) && phi(l.join(x, y)) == m.join(phi(x), phi(y)))
            });
        let c2 = l
            .elements()
            .all(|a| phi(a) == m.join_all(s.iter().filter(|&x| l.le(x, a)).map(phi)));
        let c3 = s.iter().all(|x| m.is_complemented(phi(x)));
        let is_cauchy = c1 && c2 && c3;
        let hom = FrameHom::new_unchecked(l.clone(), m.clone(), self.map.clone());
        let quasi_uniform = if self.dom.is_symmetric() {
            let q = QuasiUniformity::from_sublattice(l, s.iter())?;
            let w = q.witness_relations();
            let meet_hom = phi(l.bottom()) == m.bottom()
                && phi(l.top()) == m.top()
                && l.elements().all(|a| l.elements().all(|b| phi(l.meet(a, b)) == m.meet(phi(a), phi(b))));
            let below = l.elements().all(|a| {
                let cover = w
                    .first
                    .iter()
                    .chain(&w.second)
                    .filter(|p| p.1 == a)
                    .map(|p| phi(p.0));
                m.le(phi(a), m.join_all(cover))
            });
            let covers = q
                .basis()
                .iter()
                .all(|e| m.join_all(e.diagonal().into_iter().map(phi)) == m.top());
            let qu = meet_hom && below && covers;
            Some(QuCauchyReport {
                bounded_meet_hom: meet_hom,
                below_witness_join: below,
                entourage_covers: covers,
                is_cauchy: qu,
                agrees: qu == is_cauchy,
            })
        } else {
            None
        };
        Ok(CauchyReport {
            restricts_to_lattice_hom: c1,
            determined_by_s: c2,
            s_images_complemented: c3,
            is_cauchy,
            is_frame_hom: hom.is_frame_hom(),
            quasi_uniform,
        })
    }
}

/// λ = ∇ ∘ c*: L → 𝒞_S Idl(S), a ↦ ∇_{↓a ∩ S}.
#[derive(Clone, Debug)]
pub struct Lambda {
    pub completion: CompletionMap,
    pub congruences: CongruenceFrame,
    pub candidate: CauchyCandidate,
}

pub fn lambda_map(f: &FrithFrame, caps: &Caps) -> Result<Lambda> {
    let completion = c_and_c_star(f, caps)?;
    let il = completion.ideals.frame().clone();
    let congruences = CongruenceFrame::relative(&il, &Sublattice::whole(&il), caps)?;
    let map = f
        .frame()
        .elements()
        .map(|a| congruences.nabla(completion.c_star[a.index()]))
        .collect();
    let candidate = CauchyCandidate::new(f, congruences.structure(), map)?;
    Ok(Lambda { completion, congruences, candidate })
}

/// Every map satisfying the three Cauchy conditions, found by fixing a lattice
/// homomorphism on S and extending by joins.
pub fn enumerate_cauchy(f: &FrithFrame, m: &FiniteFrame, caps: &Caps) -> Result<Vec<CauchyCandidate>> {
    let l = f.frame();
    Caps::check("Cauchy domain", l.len(), caps.max_cauchy)?;
    Caps::check("Cauchy codomain", m.len(), caps.max_cauchy)?;
    let members: Vec<Elem> = f.s().iter().collect();
    let mut assign: Vec<Option<Elem>> = vec![None; l.len()];
    let mut out = Vec::new();
    fn consistent(l: &FiniteFrame, m: &FiniteFrame, members: &[Elem], assign: &[Option<Elem>], z: Elem) -> bool {
        for &x in members {
            let Some(px) = assign[x.index()] else { continue };
            for &y in members {
                let Some(py) = assign[y.index()] else { continue };
                let (mt, jn) = (l.meet(x, y), l.join(x, y));
                if x != z && y != z && mt != z && jn != z {
                    continue;
                }
                if let Some(pm) = assign[mt.index()] {
                    if pm != m.meet(px, py) {
                        return false;
                    }
                }
                if let Some(pj) = assign[jn.index()] {
                    if pj != m.join(px, py) {
                        return false;
                    }
                }
            }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &FrithFrame,
        m: &FiniteFrame,
        members: &[Elem],
        k: usize,
        assign: &mut Vec<Option<Elem>>,
        out: &mut Vec<CauchyCandidate>,
    ) {
        let l = f.frame();
        if k == members.len() {
            let map: Vec<Elem> = l
                .elements()
                .map(|a| m.join_all(members.iter().filter(|&&s| l.le(s, a)).map(|s| assign[s.index()].unwrap())))
                .collect();
            if members.iter().all(|s| m.is_complemented(map[s.index()])) {
                out.push(CauchyCandidate { dom: f.clone(), cod: m.clone(), map });
            }
            return;
        }
        let z = members[k];
        let choices: Vec<Elem> = if z == l.bottom() && z == l.top() {
            // trivial domain: only a trivial codomain can receive bounds
            if m.is_trivial() { vec![m.bottom()] } else { vec![] }
        } else if z == l.bottom() {
            vec![m.bottom()]
        } else if z == l.top() {
            vec![m.top()]
        } else {
            m.elements().collect()
        };
        for v in choices {
            assign[z.index()] = Some(v);
            if consistent(l, m, members, assign, z) {
                rec(f, m, members, k + 1, assign, out);
            }
        }
        assign[z.index()] = None;
    }
    rec(f, m, &members, 0, &mut assign, &mut out);
    Ok(out)
}

/// The frame homomorphism g: 𝒞_S Idl(S) → M with g ∘ λ = φ.
#[derive(Clone, Debug)]
pub struct CauchyFactorization {
    pub lambda: Lambda,
    pub g: FrameHom,
}

pub fn factor_cauchy(phi: &CauchyCandidate, caps: &Caps) -> Result<CauchyFactorization> {
    if !phi.report()?.is_cauchy {
        return Err(Error::Precondition("map is not a Cauchy map".into()));
    }
    let lambda = lambda_map(&phi.dom, caps)?;
    let ideals = &lambda.completion.ideals;
    let through_idl = ideals.extend(&phi.cod, |s| phi.apply(s));
    let g = extend_hom(&through_idl, &lambda.congruences)?;
    let l = phi.dom.frame();
    for a in l.elements() {
        if g.apply(lambda.candidate.apply(a)) != phi.apply(a) {
            return Err(Error::Internal(format!("factorization fails at {}", l.name(a))));
        }
    }
    for s in phi.dom.s().iter() {
        let p = ideals.principal(s).expect("member of S");
        if g.apply(lambda.congruences.nabla(p)) != phi.apply(s) {
            return Err(Error::Internal("g(∇_s) differs from φ(s)".into()));
        }
    }
    Ok(CauchyFactorization { lambda, g })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub coherent: bool,
    pub fsym_coherent: bool,
    pub fsym_compact: bool,
    pub cauchy_maps_checked: usize,
    pub cauchy_criterion: bool,
    pub dense_epis_checked: usize,
    pub dense_epi_criterion: bool,
    pub all_agree: bool,
    pub completion_is_dense_extremal_epi: bool,
    pub completion_is_iso: bool,
    pub factorization_holds: bool,
    pub completion_unique: bool,
    pub completion_unique_symmetric: bool,
}

/// Boolean frames with up to three atoms, as symmetric test objects.
pub fn symmetric_catalog() -> Vec<FrithFrame> {
    (0..=3).map(|n| FrithFrame::full(&FiniteFrame::boolean(n))).collect()
}

/// The four-way completeness equivalence, read over the supplied codomains and the
/// symmetric catalog, plus checks on the completion c.
pub fn completeness_suite(f: &FrithFrame, codomains: &[FiniteFrame], caps: &Caps) -> Result<CompletenessReport> {
    let coherent = f.predicates()?.is_coherent;
    let sym = f.fsym(caps)?;
    let sp = sym.object.predicates()?;

    let mut cauchy_maps_checked = 0;
    let mut cauchy_criterion = true;
    for m in codomains {
        for phi in enumerate_cauchy(f, m, caps)? {
            cauchy_maps_checked += 1;
            let r = phi.report()?;
            if !r.is_cauchy {
                return Err(Error::Internal("enumerated map fails the Cauchy conditions".into()));
            }
            cauchy_criterion &= r.is_frame_hom;
        }
    }

    let mut dense_epis_checked = 0;
    let mut dense_epi_criterion = true;
    let catalog = symmetric_catalog();
    for obj in &catalog {
        for h in FrithHom::enumerate(obj, &sym.object, caps.max_elements)? {
            if h.hom().is_dense() && h.is_extremal_epi() {
                dense_epis_checked += 1;
                dense_epi_criterion &= h.predicates().is_iso;
            }
        }
    }
    let all_agree = [sp.is_coherent, sp.is_compact, cauchy_criterion, dense_epi_criterion]
        .iter()
        .all(|&b| b == coherent);

    let comp = c_and_c_star(f, caps)?;
    let completion_is_dense_extremal_epi = comp.c.hom().is_dense() && comp.c.is_extremal_epi();
    let completion_is_iso = comp.c.predicates().is_iso;

    // Every dense extremal epi h: (M, C) ↠ fsym(L, S) from the symmetric catalog is matched
    // by a unique g: fsym(Idl S, S) → (M, C) with h ∘ g = c̄, and g is a dense extremal epi.
    let idl_obj = comp.c.dom().clone();
    let idl_sym = idl_obj.fsym(caps)?;
    let cbar = lift_hom(comp.c.hom(), &idl_sym.congruences, &sym.congruences)?;
    let mut factorization_holds = true;
    for obj in &catalog {
        for h in FrithHom::enumerate(obj, &sym.object, caps.max_elements)? {
            if !(h.hom().is_dense() && h.is_extremal_epi()) {
                continue;
            }
            let gs: Vec<FrithHom> = FrithHom::enumerate(&idl_sym.object, obj, caps.max_elements)?
                .into_iter()
                .filter(|g| g.hom().then(h.hom()) == cbar)
                .collect();
            factorization_holds &=
                gs.len() == 1 && gs[0].hom().is_dense() && gs[0].is_extremal_epi();
        }
    }

    // Second completions from the catalog: complete objects with a dense extremal epi onto
    // (L, S). Density is read on the frame map itself, and separately on its symmetric
    // reflection; only the second reading forces isomorphism with Idl(S).
    let mut completion_unique = true;
    let mut completion_unique_symmetric = true;
    for m in codomains {
        let obj = FrithFrame::full(m);
        if !obj.predicates()?.is_coherent {
            continue;
        }
        let obj_sym = obj.fsym(caps)?;
        for h in FrithHom::enumerate(&obj, f, caps.max_elements)? {
            if !h.is_extremal_epi() {
                continue;
            }
            let iso = is_isomorphic(m, idl_obj.frame());
            if h.hom().is_dense() {
                completion_unique &= iso;
            }
            if lift_hom(h.hom(), &obj_sym.congruences, &sym.congruences)?.is_dense() {
                completion_unique_symmetric &= iso;
            }
        }
    }

    Ok(CompletenessReport {
        coherent,
        fsym_coherent: sp.is_coherent,
        fsym_compact: sp.is_compact,
        cauchy_maps_checked,
        cauchy_criterion,
        dense_epis_checked,
        dense_epi_criterion,
        all_agree,
        completion_is_dense_extremal_epi,
        completion_is_iso,
        factorization_holds,
        completion_unique,
        completion_unique_symmetric,
    })
}
