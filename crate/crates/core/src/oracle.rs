//! Brute-force categorical oracles.
//!
//! Morphism predicates are decided here from their universal definitions by quantifying
//! over a finite catalog of test objects. Morphisms of both categories are concrete maps,
//! so a morphism is stored as its table and composition is table composition.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::caps::Caps;
use crate::congruence::{extend_hom, lift_hom, CongruenceFrame};
use crate::entourage::{frith_quasi_uniformity, QuasiUniformity};
use crate::error::{Error, Result};
use crate::frith::{FrithFrame, FrithHom};
use crate::lattice::{Elem, FiniteFrame, FrameHom, Sublattice};
use crate::pervin::{PervinMap, PervinSpace};

type Table = Vec<usize>;

fn compose(f: &[usize], g: &[usize]) -> Table {
    f.iter().map(|&x| g[x]).collect()
}

fn identity(n: usize) -> Table {
    (0..n).collect()
}

/// A finite concrete category given by object sizes and full hom-sets.
pub struct FiniteCategory {
    sizes: Vec<usize>,
    homs: Vec<Vec<Vec<Table>>>,
    index: Vec<Vec<HashMap<Table, usize>>>,
    epi: HashMap<(usize, usize, usize), bool>,
    mono: HashMap<(usize, usize, usize), bool>,
}

/// Predicates decided by quantification over the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BruteReport {
    pub is_epi: bool,
    pub is_mono: bool,
    pub is_iso: bool,
    pub is_extremal_mono: bool,
    pub is_extremal_epi: bool,
    pub is_regular_epi: bool,
}

impl FiniteCategory {
    pub fn new(sizes: Vec<usize>, homs: Vec<Vec<Vec<Table>>>) -> FiniteCategory {
        let index = homs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|hs| hs.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect())
                    .collect()
            })
            .collect();
        FiniteCategory { sizes, homs, index, epi: HashMap::new(), mono: HashMap::new() }
    }

    pub fn objects(&self) -> usize {
        self.sizes.len()
    }

    pub fn homs(&self, i: usize, j: usize) -> &[Table] {
        &self.homs[i][j]
    }

    pub fn find(&self, i: usize, j: usize, t: &[usize]) -> Option<usize> {
        self.index[i][j].get(t).copied()
    }

    pub fn is_epi(&mut self, i: usize, j: usize, k: usize) -> bool {
        if let Some(&b) = self.epi.get(&(i, j, k)) {
            return b;
        }
        let f = &self.homs[i][j][k];
        let b = (0..self.objects()).all(|z| {
            let mut seen = HashSet::new();
            self.homs[j][z].iter().all(|g| seen.insert(compose(f, g)))
        });
        self.epi.insert((i, j, k), b);
        b
    }

    pub fn is_mono(&mut self, i: usize, j: usize, k: usize) -> bool {
        if let Some(&b) = self.mono.get(&(i, j, k)) {
            return b;
        }
        let f = &self.homs[i][j][k];
        let b = (0..self.objects()).all(|w| {
            let mut seen = HashSet::new();
            self.homs[w][i].iter().all(|g| seen.insert(compose(g, f)))
        });
        self.mono.insert((i, j, k), b);
        b
    }

    pub fn is_iso(&self, i: usize, j: usize, k: usize) -> bool {
        let f = &self.homs[i][j][k];
        let (idi, idj) = (identity(self.sizes[i]), identity(self.sizes[j]));
        self.homs[j][i].iter().any(|g| compose(f, g) == idi && compose(g, f) == idj)
    }

    /// Mono, and every factorization through an epi has that epi invertible.
    pub fn is_extremal_mono(&mut self, i: usize, j: usize, k: usize) -> bool {
        if !self.is_mono(i, j, k) {
            return false;
        }
        let f = self.homs[i][j][k].clone();
        for w in 0..self.objects() {
            for e in 0..self.homs[i][w].len() {
                let through = self.homs[w][j].iter().any(|m| compose(&self.homs[i][w][e], m) == f);
                if through && self.is_epi(i, w, e) && !self.is_iso(i, w, e) {
                    return false;
                }
            }
        }
        true
    }

    /// Epi, and every factorization through a mono has that mono invertible.
    pub fn is_extremal_epi(&mut self, i: usize, j: usize, k: usize) -> bool {
        if !self.is_epi(i, j, k) {
            return false;
        }
        let f = self.homs[i][j][k].clone();
        for w in 0..self.objects() {
            for m in 0..self.homs[w][j].len() {
                let through = self.homs[i][w].iter().any(|e| compose(e, &self.homs[w][j][m]) == f);
                if through && self.is_mono(w, j, m) && !self.is_iso(w, j, m) {
                    return false;
                }
            }
        }
        true
    }

    /// f is the coequalizer of some parallel pair out of a catalog object.
    pub fn is_regular_epi(&self, i: usize, j: usize, k: usize) -> bool {
        let f = &self.homs[i][j][k];
        (0..self.objects()).any(|z| {
            let hs = &self.homs[z][i];
            hs.iter().enumerate().any(|(a, g1)| {
                hs[a..].iter().any(|g2| compose(g1, f) == compose(g2, f) && self.is_coequalizer(f, i, j, g1, g2))
            })
        })
    }

    fn is_coequalizer(&self, f: &[usize], i: usize, j: usize, g1: &[usize], g2: &[usize]) -> bool {
        (0..self.objects()).all(|n| {
            self.homs[i][n].iter().all(|h| {
                if compose(g1, h) != compose(g2, h) {
                    return true;
                }
                self.homs[j][n].iter().filter(|u| compose(f, u) == *h).count() == 1
            })
        })
    }

    pub fn report(&mut self, i: usize, j: usize, k: usize) -> BruteReport {
        BruteReport {
            is_epi: self.is_epi(i, j, k),
            is_mono: self.is_mono(i, j, k),
            is_iso: self.is_iso(i, j, k),
            is_extremal_mono: self.is_extremal_mono(i, j, k),
            is_extremal_epi: self.is_extremal_epi(i, j, k),
            is_regular_epi: self.is_regular_epi(i, j, k),
        }
    }
}

/// Outcome of comparing the structural predicates with the oracles.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Agreement {
    pub objects: usize,
    pub morphisms: usize,
    pub disagreements: Vec<String>,
}

impl Agreement {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// The category of the given Pervin spaces.
pub fn pervin_category(spaces: &[PervinSpace]) -> FiniteCategory {
    let sizes = spaces.iter().map(|x| x.size()).collect();
    let homs = spaces
        .iter()
        .map(|x| {
            spaces
                .iter()
                .map(|y| PervinMap::enumerate(x, y).iter().map(|f| f.table().to_vec()).collect())
                .collect()
        })
        .collect();
    FiniteCategory::new(sizes, homs)
}

/// Pervin epi, extremal mono and iso against the oracles, for every map in the catalog.
pub fn pervin_agreement(spaces: &[PervinSpace]) -> Agreement {
    let mut cat = pervin_category(spaces);
    let mut out = Agreement { objects: spaces.len(), ..Agreement::default() };
    for i in 0..spaces.len() {
        for j in 0..spaces.len() {
            for k in 0..cat.homs(i, j).len() {
                let f = PervinMap::new(spaces[i].clone(), spaces[j].clone(), cat.homs(i, j)[k].clone())
                    .expect("enumerated maps are valid");
                let p = f.predicates();
                let epi = cat.is_epi(i, j, k);
                let mono = cat.is_mono(i, j, k);
                let ext = cat.is_extremal_mono(i, j, k);
                let iso = cat.is_iso(i, j, k);
                out.morphisms += 1;
                for (name, mine, brute) in [
                    ("epi", p.is_epi, epi),
                    ("mono", p.is_mono, mono),
                    ("extremal mono", p.is_extremal_mono, ext),
                    ("iso", p.is_iso, iso),
                ] {
                    if mine != brute {
                        out.disagreements.push(format!("{name}: {f:?} predicate {mine}, oracle {brute}"));
                    }
                }
            }
        }
    }
    out
}

/// The category of the given Frith frames.
pub fn frith_category(objs: &[FrithFrame], caps: &Caps) -> Result<FiniteCategory> {
    let sizes = objs.iter().map(|f| f.frame().len()).collect();
    let mut homs = Vec::new();
    for a in objs {
        let mut row = Vec::new();
        for b in objs {
            let hs = FrithHom::enumerate(a, b, caps.max_elements)?;
            row.push(hs.iter().map(|h| h.hom().table().iter().map(|e| e.index()).collect()).collect());
        }
        homs.push(row);
    }
    Ok(FiniteCategory::new(sizes, homs))
}

/// Frith mono, extremal epi, regular epi and iso against the oracles.
pub fn frith_agreement(objs: &[FrithFrame], caps: &Caps) -> Result<Agreement> {
    let mut cat = frith_category(objs, caps)?;
    let mut out = Agreement { objects: objs.len(), ..Agreement::default() };
    for i in 0..objs.len() {
        for j in 0..objs.len() {
            for k in 0..cat.homs(i, j).len() {
                let map = cat.homs(i, j)[k].iter().map(|&x| Elem::new(x)).collect();
                let hom = FrameHom::new(objs[i].frame().clone(), objs[j].frame().clone(), map)?;
                let h = FrithHom::new(&objs[i], &objs[j], hom)?;
                let p = h.predicates();
                let b = cat.report(i, j, k);
                out.morphisms += 1;
                for (name, mine, brute) in [
                    ("mono", p.is_mono, b.is_mono),
                    ("extremal epi", p.is_extremal_epi, b.is_extremal_epi),
                    ("regular epi", p.is_regular_epi, b.is_regular_epi),
                    ("iso", p.is_iso, b.is_iso),
                ] {
                    if mine != brute {
                        out.disagreements.push(format!("{name}: {:?} predicate {mine}, oracle {brute}", h.hom()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every bounded sublattice of a frame.
pub fn sublattices(l: &FiniteFrame) -> Vec<Sublattice> {
    let inner: Vec<Elem> = l.elements().filter(|&x| x != l.bottom() && x != l.top()).collect();
    let mut out = Vec::new();
    for code in 0u64..(1u64 << inner.len()) {
        let members = inner
            .iter()
            .enumerate()
            .filter(|(k, _)| code >> k & 1 == 1)
            .map(|(_, &x)| x)
            .chain([l.bottom(), l.top()]);
        if let Ok(s) = Sublattice::new(l, members) {
            out.push(s);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    /// Frame homs 𝒞_S L → M restricting to h along ∇.
    pub alternatives: usize,
    pub restricts: bool,
    pub unique: bool,
}

/// h̃ for h with complemented S-images, compared with every frame hom 𝒞_S L → M
/// that agrees with h along ∇.
pub fn extension_check(h: &FrameHom, s: &Sublattice, caps: &Caps) -> Result<ExtensionReport> {
    let cf = CongruenceFrame::relative(h.dom(), s, caps)?;
    let ext = extend_hom(h, &cf)?;
    let restricts = h.dom().elements().all(|a| ext.apply(cf.nabla(a)) == h.apply(a));
    let along: Vec<FrameHom> = FrameHom::enumerate(cf.structure(), h.cod(), caps.max_elements)?
        .into_iter()
        .filter(|g| h.dom().elements().all(|a| g.apply(cf.nabla(a)) == h.apply(a)))
        .collect();
    Ok(ExtensionReport { alternatives: along.len(), restricts, unique: along.iter().all(|g| *g == ext) })
}

/// [`extension_check`] for every hom L → M with complemented S-images, sharing one
/// enumeration of 𝒞_S L → M.
pub fn extension_scan(
    l: &FiniteFrame,
    s: &Sublattice,
    m: &FiniteFrame,
    caps: &Caps,
) -> Result<Vec<(FrameHom, ExtensionReport)>> {
    let cf = CongruenceFrame::relative(l, s, caps)?;
    let all = FrameHom::enumerate(cf.structure(), m, caps.max_elements)?;
    let mut out = Vec::new();
    for h in FrameHom::enumerate(l, m, caps.max_elements)? {
        if !s.iter().all(|x| m.is_complemented(h.apply(x))) {
            continue;
        }
        let ext = extend_hom(&h, &cf)?;
        let restricts = l.elements().all(|a| ext.apply(cf.nabla(a)) == h.apply(a));
        let along: Vec<&FrameHom> = all
            .iter()
            .filter(|g| l.elements().all(|a| g.apply(cf.nabla(a)) == h.apply(a)))
            .collect();
        let report = ExtensionReport { alternatives: along.len(), restricts, unique: along.iter().all(|g| **g == ext) };
        out.push((h, report));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreflectionReport {
    pub frith_homs: usize,
    pub quasi_uniform_homs: usize,
    /// g ↦ γ ∘ ḡ is injective and lands in the quasi-uniform homs.
    pub injective: bool,
    pub lands_in_homs: bool,
    pub bijective: bool,
}

/// For (K, ℰ) and a Frith frame (M, T): Frith homs (M, T) → (L, S) against quasi-uniform
/// homs (𝒞_T M, ℰ_T) → (K, ℰ), matched through γ.
pub fn coreflection_check(q: &QuasiUniformity, m: &FrithFrame, caps: &Caps) -> Result<CoreflectionReport> {
    let g = q.gamma(caps)?;
    let target = FrithFrame::full(&g.l);
    let (mcf, mq) = frith_quasi_uniformity(m.frame(), m.s(), caps)?;
    let frith = FrithHom::enumerate(m, &target, caps.max_elements)?;
    let mut images = HashSet::new();
    let mut lands = true;
    for h in &frith {
        let bar = lift_hom(h.hom(), &mcf, &g.congruences)?;
        let composite = bar.then(&g.map);
        lands &= mq.is_hom_to(&composite, q);
        images.insert(composite);
    }
    let qu: HashSet<FrameHom> = FrameHom::enumerate(mcf.structure(), q.frame(), caps.max_elements)?
        .into_iter()
        .filter(|h| mq.is_hom_to(h, q))
        .collect();
    let injective = images.len() == frith.len();
    Ok(CoreflectionReport {
        frith_homs: frith.len(),
        quasi_uniform_homs: qu.len(),
        injective,
        lands_in_homs: lands,
        bijective: injective && lands && images == qu,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniversalReport {
    pub morphisms: usize,
    /// Every morphism factors through the universal arrow exactly once.
    pub unique_factorizations: bool,
}

/// Every Frith hom from f into a symmetric frame factors uniquely through the unit of fsym.
pub fn fsym_reflection_check(f: &FrithFrame, symmetric: &[FrithFrame], caps: &Caps) -> Result<UniversalReport> {
    let sym = f.fsym(caps)?;
    let mut morphisms = 0;
    let mut unique = true;
    for g in symmetric {
        if !g.is_symmetric() {
            return Err(Error::Precondition("reflection targets must be symmetric".into()));
        }
        let through = FrithHom::enumerate(&sym.object, g, caps.max_elements)?;
        for h in FrithHom::enumerate(f, g, caps.max_elements)? {
            morphisms += 1;
            let n = through.iter().filter(|u| sym.unit.then(u).hom() == h.hom()).count();
            unique &= n == 1;
        }
    }
    Ok(UniversalReport { morphisms, unique_factorizations: unique })
}

/// Every Frith hom from a symmetric frame into f factors uniquely through the Boolean core.
pub fn boolean_core_check(f: &FrithFrame, symmetric: &[FrithFrame], caps: &Caps) -> Result<UniversalReport> {
    let (core, counit) = f.boolean_core()?;
    let mut morphisms = 0;
    let mut unique = true;
    for g in symmetric {
        if !g.is_symmetric() {
            return Err(Error::Precondition("coreflection sources must be symmetric".into()));
        }
        let into_core = FrithHom::enumerate(g, &core, caps.max_elements)?;
        for h in FrithHom::enumerate(g, f, caps.max_elements)? {
            morphisms += 1;
            let n = into_core.iter().filter(|u| u.then(&counit).hom() == h.hom()).count();
            unique &= n == 1;
        }
    }
    Ok(UniversalReport { morphisms, unique_factorizations: unique })
}

/// The uniform reflection of ℰ_S equals the filter of the symmetrized lattice part.
pub fn symmetrization_square(f: &FrithFrame, caps: &Caps) -> Result<bool> {
    let (_, qs) = frith_quasi_uniformity(f.frame(), f.s(), caps)?;
    let sym = f.fsym(caps)?;
    if sym.object.frame() != qs.frame() {
        return Err(Error::Internal("symmetrization and the Frith filter live on different frames".into()));
    }
    let sbar = QuasiUniformity::from_sublattice(qs.frame(), sym.object.s().iter())?;
    Ok(qs.uniform_reflection().same_filter(&sbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::completion::symmetric_catalog;

    #[test]
    fn pervin_oracles_on_small_spaces() {
        let spaces = catalog::pervin_catalog(2);
        let a = pervin_agreement(&spaces);
        assert!(a.ok(), "{:?}", a.disagreements);
        assert!(a.morphisms > 20);
    }

    #[test]
    fn frith_oracles_on_small_frames() {
        let objs: Vec<FrithFrame> = catalog::frames_by_size(4).iter().map(FrithFrame::full).collect();
        let a = frith_agreement(&objs, &Caps::default()).unwrap();
        assert!(a.ok(), "{:?}", a.disagreements);
    }

    #[test]
    fn brute_predicates_on_named_maps() {
        let c3 = FrithFrame::full(&FiniteFrame::chain(3));
        let two = FrithFrame::initial();
        let objs = vec![two.clone(), c3.clone(), FrithFrame::full(&FiniteFrame::boolean(2))];
        let mut cat = frith_category(&objs, &Caps::default()).unwrap();
        // TWO → C3 is mono but not extremal epi; C3 → TWO is a regular epi.
        assert_eq!(cat.homs(0, 1).len(), 1);
        let r = cat.report(0, 1, 0);
        assert!(r.is_mono && !r.is_extremal_epi);
        for k in 0..cat.homs(1, 0).len() {
            let r = cat.report(1, 0, k);
            assert!(r.is_regular_epi && r.is_extremal_epi && !r.is_mono);
        }
    }

    #[test]
    fn extension_is_unique() {
        let d4 = FiniteFrame::boolean(2);
        let id = FrameHom::identity(&d4);
        let r = extension_check(&id, &Sublattice::whole(&d4), &Caps::default()).unwrap();
        assert!(r.restricts && r.unique && r.alternatives == 1);
        let c3 = FiniteFrame::chain(3);
        let h = FrameHom::enumerate(&c3, &FiniteFrame::two(), 8).unwrap();
        for h in h {
            let r = extension_check(&h, &Sublattice::bounds(&c3), &Caps::default()).unwrap();
            assert!(r.unique && r.alternatives == 1);
        }
    }

    #[test]
    fn sublattice_counts() {
        assert_eq!(sublattices(&FiniteFrame::chain(3)).len(), 2);
        assert_eq!(sublattices(&FiniteFrame::boolean(2)).len(), 4);
    }

    #[test]
    fn coreflection_examples() {
        let caps = Caps::default();
        let d4 = FiniteFrame::boolean(2);
        let a = d4.by_name("a").unwrap();
        let q = QuasiUniformity::from_sublattice(&d4, [a]).unwrap();
        for m in [FrithFrame::initial(), FrithFrame::full(&FiniteFrame::chain(3)), FrithFrame::full(&d4)] {
            let r = coreflection_check(&q, &m, &caps).unwrap();
            assert!(r.bijective, "{r:?}");
        }
    }

    #[test]
    fn symmetrization_universals() {
        let caps = Caps::default();
        let sym = symmetric_catalog();
        for f in catalog::frames_by_ji(2).iter().map(FrithFrame::full) {
            assert!(fsym_reflection_check(&f, &sym, &caps).unwrap().unique_factorizations);
            assert!(boolean_core_check(&f, &sym, &caps).unwrap().unique_factorizations);
            assert!(symmetrization_square(&f, &caps).unwrap());
        }
    }
}
