//! Points of frames and the adjunction between Pervin spaces and Frith frames.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::caps::Caps;
use crate::closure::closed_sets;
use crate::congruence::lift_hom;
use crate::error::{Error, Result};
use crate::frith::{FrithFrame, FrithHom};
use crate::lattice::poset::bit;
use crate::lattice::{Elem, FiniteFrame, FrameHom};
use crate::pervin::{PervinMap, PervinSpace, PointSet};

/// A frame homomorphism p: L → 2, kept with its prime filter p⁻¹(1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    hom: FrameHom,
}

impl Point {
    pub fn hom(&self) -> &FrameHom {
        &self.hom
    }

    pub fn holds(&self, a: Elem) -> bool {
        self.hom.apply(a) == self.hom.cod().top()
    }

    pub fn filter(&self) -> Vec<Elem> {
        self.hom.dom().elements().filter(|&a| self.holds(a)).collect()
    }

    /// Named by the least member of its filter.
    pub fn name(&self) -> String {
        let l = self.hom.dom();
        l.name(l.meet_all(self.filter())).to_string()
    }
}

fn filter_closure(l: &FiniteFrame, seed: &FixedBitSet) -> FixedBitSet {
    let mut cur = seed.clone();
    cur.insert(l.top().index());
    loop {
        let mut next = cur.clone();
        for i in cur.ones() {
            for u in l.up_set(Elem::new(i)) {
                next.insert(u.index());
            }
            for j in cur.ones() {
                next.insert(l.meet(Elem::new(i), Elem::new(j)).index());
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// All points, found by enumerating filters and keeping the proper prime ones.
pub fn points(l: &FiniteFrame) -> Result<Vec<Point>> {
    let filters = closed_sets(l.len(), |s| filter_closure(l, s), l.len() + 1, "filters")?;
    let two = FiniteFrame::two();
    let mut out = Vec::new();
    for f in filters {
        let inside = |a: Elem| f.contains(a.index());
        if inside(l.bottom()) {
            continue;
        }
        let prime = l
            .elements()
            .all(|a| l.elements().all(|b| !inside(l.join(a, b)) || inside(a) || inside(b)));
        if prime {
            let hom = FrameHom::from_fn(l, &two, |a| if inside(a) { two.top() } else { two.bottom() });
            if !hom.is_frame_hom() {
                return Err(Error::Internal("prime filter does not give a frame homomorphism".into()));
            }
            out.push(Point { hom });
        }
    }
    if out.len() != l.join_irreducibles().len() {
        return Err(Error::Internal("point count differs from the join-irreducible count".into()));
    }
    Ok(out)
}

/// â = {p : p(a) = 1}.
pub fn hat(pts: &[Point], a: Elem) -> PointSet {
    pts.iter()
        .enumerate()
        .filter(|(_, p)| p.holds(a))
        .fold(0, |m, (i, _)| m | bit(i))
}

/// pt(L, S) = (pt L, Ŝ), with the points in universe order.
pub fn pt_frith(f: &FrithFrame) -> Result<(PervinSpace, Vec<Point>)> {
    let pts = points(f.frame())?;
    let universe = pts.iter().map(Point::name).collect();
    let lattice: Vec<PointSet> = f.s().iter().map(|s| hat(&pts, s)).collect();
    Ok((PervinSpace::new(universe, lattice)?, pts))
}

/// pt(h): pt(M, T) → pt(L, S), p ↦ p ∘ h. Asserts (pt h)⁻¹(ŝ) = (h(s))^.
pub fn pt_map(h: &FrithHom) -> Result<PervinMap> {
    let (x, xp) = pt_frith(h.dom())?;
    let (y, yp) = pt_frith(h.cod())?;
    let table: Vec<usize> = yp
        .iter()
        .map(|q| {
            let comp = h.hom().then(q.hom());
            xp.iter().position(|p| p.hom == comp).expect("p ∘ h is a point")
        })
        .collect();
    let m = PervinMap::new(y, x, table)?;
    for s in h.dom().s().iter() {
        if m.preimage(hat(&xp, s)) != hat(&yp, h.apply(s)) {
            return Err(Error::Internal("preimage of a basic set is not the basic set of the image".into()));
        }
    }
    Ok(m)
}

/// Ω(X, 𝒮) = (Ω_𝒮 X, 𝒮), with the subset carried by each element.
pub fn omega_frith(x: &PervinSpace) -> Result<(FrithFrame, Vec<PointSet>)> {
    let (frame, sets) = x.frame()?;
    Ok((FrithFrame::full(&frame), sets))
}

/// Ω(f): Ω(Y) → Ω(X), U ↦ f⁻¹(U).
pub fn omega_map(f: &PervinMap) -> Result<FrithHom> {
    let (ox, xs) = omega_frith(f.dom())?;
    let (oy, ys) = omega_frith(f.cod())?;
    let hom = FrameHom::from_fn(oy.frame(), ox.frame(), |u| {
        let pre = f.preimage(ys[u.index()]);
        Elem::new(xs.iter().position(|&s| s == pre).expect("preimage of an open is open"))
    });
    FrithHom::new(&oy, &ox, hom)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub pervin_maps: usize,
    pub frith_homs: usize,
    pub bijection: bool,
    pub is_spatial: bool,
    pub is_sober: bool,
}

/// Perv(X, pt F) ≅ Frith(F, Ω X), with spatiality of F and sobriety of X.
pub fn adjunction_check(x: &PervinSpace, f: &FrithFrame, caps: &Caps) -> Result<AdjunctionReport> {
    let (ptf, pts) = pt_frith(f)?;
    let (ox, xs) = omega_frith(x)?;
    let maps = PervinMap::enumerate(x, &ptf);
    let homs = FrithHom::enumerate(f, &ox, caps.max_elements)?;
    let l = f.frame();
    // ψ: map ↦ (a ↦ f⁻¹(â)).
    let psi = |m: &PervinMap| -> Option<FrameHom> {
        let table: Option<Vec<Elem>> = l
            .elements()
            .map(|a| {
                let pre = m.preimage(hat(&pts, a));
                xs.iter().position(|&s| s == pre).map(Elem::new)
            })
            .collect();
        table.map(|t| FrameHom::new_unchecked(l.clone(), ox.frame().clone(), t))
    };
    // φ: hom ↦ (x ↦ the point a ↦ [x ∈ g(a)]).
    let phi = |g: &FrithHom| -> Option<Vec<usize>> {
        (0..x.size())
            .map(|i| {
                pts.iter().position(|p| {
                    l.elements().all(|a| p.holds(a) == (xs[g.apply(a).index()] & bit(i) != 0))
                })
            })
            .collect()
    };
    let from_maps: HashSet<FrameHom> = maps.iter().filter_map(psi).collect();
    let from_homs: HashSet<Vec<usize>> = homs.iter().filter_map(phi).collect();
    let hom_set: HashSet<FrameHom> = homs.iter().map(|g| g.hom().clone()).collect();
    let map_set: HashSet<Vec<usize>> = maps.iter().map(|m| m.table().to_vec()).collect();
    let bijection = from_maps.len() == maps.len()
        && from_maps == hom_set
        && from_homs.len() == homs.len()
        && from_homs == map_set;

    // The counit a ↦ â onto Ŝ is an isomorphism exactly when â determines a.
    let is_spatial = {
        let hats: HashSet<PointSet> = l.elements().map(|a| hat(&pts, a)).collect();
        hats.len() == l.len()
    };
    if !is_spatial {
        return Err(Error::Internal("finite frame is not spatial".into()));
    }
    let is_sober = is_sober(x)?;
    Ok(AdjunctionReport { pervin_maps: maps.len(), frith_homs: homs.len(), bijection, is_spatial, is_sober })
}

/// The unit X → pt Ω X, x ↦ (U ↦ [x ∈ U]), is an isomorphism.
pub fn is_sober(x: &PervinSpace) -> Result<bool> {
    let (ox, xs) = omega_frith(x)?;
    let (ptox, pts) = pt_frith(&ox)?;
    let table: Vec<Option<usize>> = (0..x.size())
        .map(|i| {
            pts.iter()
                .position(|p| ox.frame().elements().all(|u| p.holds(u) == (xs[u.index()] & bit(i) != 0)))
        })
        .collect();
    let Some(table) = table.into_iter().collect::<Option<Vec<usize>>>() else {
        return Ok(false);
    };
    let unit = PervinMap::new(x.clone(), ptox, table)?;
    Ok(unit.predicates().is_iso)
}

#[derive(Clone, Debug)]
pub struct AlphaReport {
    pub map: PervinMap,
    pub is_bijective: bool,
    pub basic_sets_match: bool,
    pub is_iso: bool,
}

/// α: psym(pt(L,S)) → pt(fsym(L,S)), sending p to the unique p̃ with p̃ ∘ ∇ = p.
pub fn alpha(f: &FrithFrame, caps: &Caps) -> Result<AlphaReport> {
    let (ptf, pts) = pt_frith(f)?;
    let src = ptf.psym();
    let sym = f.fsym(caps)?;
    let (ptsym, qts) = pt_frith(&sym.object)?;
    let nabla = sym.unit.hom();
    let mut table = Vec::new();
    let mut unique = true;
    for p in &pts {
        let ext: Vec<usize> = qts
            .iter()
            .enumerate()
            .filter(|(_, q)| nabla.then(q.hom()) == p.hom)
            .map(|(i, _)| i)
            .collect();
        unique &= ext.len() == 1;
        match ext.first() {
            Some(&i) => table.push(i),
            None => return Err(Error::Internal(format!("point {} has no extension", p.name()))),
        }
    }
    let map = PervinMap::new(src, ptsym, table)?;
    let cf = &sym.congruences;
    let basic_sets_match = f.s().iter().all(|s| {
        let hs = hat(&pts, s);
        let full = ptf.full();
        map.preimage(hat(&qts, cf.nabla(s))) == hs
            && cf.delta(s).map(|d| map.preimage(hat(&qts, d))) == Some(full & !hs)
    });
    let is_bijective = unique && map.is_injective() && map.is_surjective();
    let is_iso = map.predicates().is_iso;
    Ok(AlphaReport { map, is_bijective, basic_sets_match, is_iso })
}

/// pt(fsym h) ∘ α_M = α_L ∘ psym(pt h) for h: (L,S) → (M,T), pointwise.
pub fn alpha_naturality(h: &FrithHom, caps: &Caps) -> Result<bool> {
    let al = alpha(h.dom(), caps)?;
    let am = alpha(h.cod(), caps)?;
    let sl = h.dom().fsym(caps)?;
    let sm = h.cod().fsym(caps)?;
    let bar = lift_hom(h.hom(), &sl.congruences, &sm.congruences)?;
    let bar = FrithHom::new(&sl.object, &sm.object, bar)?;
    let pt_bar = pt_map(&bar)?;
    let pt_h = pt_map(h)?;
    Ok((0..am.map.dom().size()).all(|y| pt_bar.apply(am.map.apply(y)) == al.map.apply(pt_h.apply(y))))
}
