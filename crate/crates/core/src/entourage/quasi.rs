//! Quasi-uniformities given by finite filter bases of entourages.
//!
//! On a finite frame every filter of C-ideals is principal, so a basis is summarised by
//! its core (the intersection of all members). Filter comparisons reduce to core comparisons.

use std::collections::HashSet;

use crate::caps::Caps;
use crate::congruence::{extend_hom, CongruenceFrame};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteFrame, FrameHom, Sublattice};

use super::CIdeal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiUniformity {
    frame: FiniteFrame,
    basis: Vec<CIdeal>,
    core: CIdeal,
}

/// Outcome of the axiom checks. Every field is computed literally on the stored basis.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuReport {
    pub is_filter_basis: bool,
    pub all_entourages: bool,
    pub square_refinement: bool,
    pub generates_frame: bool,
    pub is_uniform: bool,
    pub is_transitive: bool,
    pub is_totally_bounded: bool,
    pub finite_checks_agree: bool,
}

impl QuReport {
    pub fn is_quasi_uniformity(&self) -> bool {
        self.is_filter_basis && self.all_entourages && self.square_refinement && self.generates_frame
    }
}

/// The two auxiliary relations and the subframes they determine.
#[derive(Clone, Debug)]
pub struct Witnesses {
    pub first: Vec<(Elem, Elem)>,
    pub second: Vec<(Elem, Elem)>,
    pub l1: Sublattice,
    pub l2: Sublattice,
    pub l1_is_subframe: bool,
    pub l2_is_subframe: bool,
}

/// Partition data for one transitive basis entourage E, with E = ⋂ E_{r_x}.
#[derive(Clone, Debug)]
pub struct PartitionWitness {
    pub basis_index: usize,
    pub cover: Vec<Elem>,
    pub partition: Vec<Elem>,
    /// (x, r_x, r_x*) for each block x.
    pub blocks: Vec<(Elem, Elem, Elem)>,
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub r: Sublattice,
    pub witnesses: Vec<PartitionWitness>,
}

/// Comparison of (h ⊕ h)[ℰ] with a filter on the codomain.
#[derive(Clone, Debug)]
pub struct ImageComparison {
    pub image: Vec<CIdeal>,
    /// Every (h ⊕ h)(E) lies in the target filter.
    pub image_within_target: bool,
    /// The target filter lies inside the filter generated by the images.
    pub target_within_image: bool,
}

/// Result of rebuilding a Frith frame from a transitive totally bounded quasi-uniformity.
#[derive(Clone, Debug)]
pub struct Gamma {
    /// L = ⟨R⟩ as a frame, with its embedding e: L ↪ K.
    pub l: FiniteFrame,
    pub embedding: FrameHom,
    pub r: Sublattice,
    pub congruences: CongruenceFrame,
    pub domain: QuasiUniformity,
    pub map: FrameHom,
    pub is_dense: bool,
    pub is_surjective: bool,
    pub generates_filter: bool,
    pub is_iso: bool,
}

fn meet_closure(gens: Vec<CIdeal>) -> Vec<CIdeal> {
    let mut seen: HashSet<CIdeal> = HashSet::new();
    let mut out: Vec<CIdeal> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            out.push(g);
        }
    }
    let mut i = 0;
    while i < out.len() {
        for j in 0..i {
            let m = out[i].meet(&out[j]);
            if seen.insert(m.clone()) {
                out.push(m);
            }
        }
        i += 1;
    }
    out
}

impl QuasiUniformity {
    /// From a basis, checking that members are entourages on L × L and form a filter basis.
    /// An empty basis stands for the filter {top}.
    pub fn new(l: &FiniteFrame, basis: Vec<CIdeal>) -> Result<QuasiUniformity> {
        let q = QuasiUniformity::new_unchecked(l, basis)?;
        if let Some(bad) = q.basis.iter().position(|e| !e.is_entourage()) {
            return Err(Error::Precondition(format!("basis member {bad} is not an entourage")));
        }
        if !q.is_filter_basis() {
            return Err(Error::Precondition("basis is not a filter basis".into()));
        }
        Ok(q)
    }

    /// From a basis, checking only that members live on L × L.
    pub fn new_unchecked(l: &FiniteFrame, basis: Vec<CIdeal>) -> Result<QuasiUniformity> {
        let basis = if basis.is_empty() { vec![CIdeal::top(l, l)] } else { basis };
        if basis.iter().any(|e| e.left() != l || e.right() != l) {
            return Err(Error::Precondition("basis member lives on another frame".into()));
        }
        let core = basis.iter().skip(1).fold(basis[0].clone(), |acc, e| acc.meet(e));
        Ok(QuasiUniformity { frame: l.clone(), basis, core })
    }

    /// The filter generated by a subbasis, with basis its finite intersections.
    pub fn generated(l: &FiniteFrame, subbasis: Vec<CIdeal>) -> Result<QuasiUniformity> {
        QuasiUniformity::new(l, meet_closure(subbasis))
    }

    /// ℰ_R: generated by {E_r : r ∈ R} for complemented r.
    pub fn from_sublattice(k: &FiniteFrame, r: impl IntoIterator<Item = Elem>) -> Result<QuasiUniformity> {
        let mut gens = Vec::new();
        for x in r {
            if !k.is_complemented(x) {
                return Err(Error::NotComplemented(k.name(x).to_string()));
            }
            gens.push(CIdeal::e_r(k, x));
        }
        QuasiUniformity::generated(k, gens)
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn basis(&self) -> &[CIdeal] {
        &self.basis
    }

    /// The least member of the filter.
    pub fn core(&self) -> &CIdeal {
        &self.core
    }

    pub fn contains(&self, e: &CIdeal) -> bool {
        self.core.le(e)
    }

    /// Every member of self belongs to other.
    pub fn is_subfilter_of(&self, other: &QuasiUniformity) -> bool {
        self.basis.iter().all(|e| other.contains(e))
    }

    pub fn same_filter(&self, other: &QuasiUniformity) -> bool {
        self.is_subfilter_of(other) && other.is_subfilter_of(self)
    }

    pub fn is_filter_basis(&self) -> bool {
        let set: Vec<&CIdeal> = self.basis.iter().collect();
        set.iter().enumerate().all(|(i, a)| {
            set[i..].iter().all(|b| {
                let m = a.meet(b);
                set.iter().any(|c| c.le(&m))
            })
        })
    }

    /// For each E in the basis some F in the basis has F ∘ F ⊆ E.
    pub fn square_refinement(&self) -> bool {
        let squares: Vec<CIdeal> = self.basis.iter().map(|f| f.compose(f)).collect();
        self.basis.iter().all(|e| squares.iter().any(|s| s.le(e)))
    }

    pub fn witness_relations(&self) -> Witnesses {
        let l = &self.frame;
        let squares: Vec<CIdeal> = l.elements().map(|b| CIdeal::oplus(l, l, b, b)).collect();
        let mut first = Vec::new();
        let mut second = Vec::new();
        for b in l.elements() {
            let left: Vec<CIdeal> = self.basis.iter().map(|a| a.compose(&squares[b.index()])).collect();
            let right: Vec<CIdeal> = self.basis.iter().map(|a| squares[b.index()].compose(a)).collect();
            for a in l.elements() {
                let target = &squares[a.index()];
                if left.iter().any(|c| c.le(target)) {
                    first.push((b, a));
                }
                if right.iter().any(|c| c.le(target)) {
                    second.push((b, a));
                }
            }
        }
        let collect = |rel: &[(Elem, Elem)]| {
            let mut bits = fixedbitset::FixedBitSet::with_capacity(l.len());
            for a in l.elements() {
                let below = l.join_all(rel.iter().filter(|p| p.1 == a).map(|p| p.0));
                if below == a {
                    bits.insert(a.index());
                }
            }
            Sublattice::from_bits_unchecked(l, bits)
        };
        let l1 = collect(&first);
        let l2 = collect(&second);
        let is_subframe = |s: &Sublattice| Sublattice::new(l, s.iter()).is_ok();
        Witnesses { l1_is_subframe: is_subframe(&l1), l2_is_subframe: is_subframe(&l2), first, second, l1, l2 }
    }

    pub fn report(&self) -> QuReport {
        let l = &self.frame;
        let w = self.witness_relations();
        let generates_frame = Sublattice::subframe_generated(l, w.l1.iter().chain(w.l2.iter())).is_whole();
        let is_uniform = self.basis.iter().all(|e| self.contains(&e.inverse()));
        let is_transitive = self
            .basis
            .iter()
            .all(|e| self.basis.iter().any(|t| t.le(e) && t.is_transitive()));
        let is_totally_bounded = self
            .basis
            .iter()
            .all(|e| self.basis.iter().any(|t| t.le(e) && t.is_finite_by_diagonal()));
        let finite_checks_agree = self
            .basis
            .iter()
            .all(|e| e.is_finite_by_diagonal() == e.is_finite_by_cover());
        QuReport {
            is_filter_basis: self.is_filter_basis(),
            all_entourages: self.basis.iter().all(CIdeal::is_entourage),
            square_refinement: self.square_refinement(),
            generates_frame,
            is_uniform,
            is_transitive,
            is_totally_bounded,
            finite_checks_agree,
        }
    }

    /// {E ∩ E⁻¹ : E in the basis}.
    pub fn uniform_reflection(&self) -> QuasiUniformity {
        let basis = self.basis.iter().map(|e| e.meet(&e.inverse())).collect();
        QuasiUniformity::new_unchecked(&self.frame, basis).expect("same frame")
    }

    /// Compare (h ⊕ h)[ℰ] with a filter on the codomain of h.
    pub fn image_filter(&self, h: &FrameHom, target: &QuasiUniformity) -> ImageComparison {
        assert!(h.dom() == &self.frame && h.cod() == target.frame(), "hom does not match the filters");
        let image: Vec<CIdeal> = self.basis.iter().map(|e| e.image(h, h)).collect();
        let image_within_target = image.iter().all(|e| target.contains(e));
        let image_core = image.iter().skip(1).fold(image[0].clone(), |acc, e| acc.meet(e));
        let target_within_image = target.basis.iter().all(|e| image_core.le(e));
        ImageComparison { image, image_within_target, target_within_image }
    }

    /// h is a quasi-uniform homomorphism from self to target.
    pub fn is_hom_to(&self, h: &FrameHom, target: &QuasiUniformity) -> bool {
        self.image_filter(h, target).image_within_target
    }

    /// The complemented r with E_r in the filter, plus partition witnesses for
    /// every transitive basis entourage.
    pub fn extract_r(&self) -> Result<Extraction> {
        let report = self.report();
        if !report.is_transitive || !report.is_totally_bounded {
            return Err(Error::Precondition("quasi-uniformity is not transitive and totally bounded".into()));
        }
        let k = &self.frame;
        let members: Vec<Elem> = k
            .elements()
            .filter(|&r| k.is_complemented(r) && self.contains(&CIdeal::e_r(k, r)))
            .collect();
        let r = Sublattice::new(k, members)
            .map_err(|e| Error::Internal(format!("extracted set is not a sublattice: {e}")))?;
        let mut witnesses = Vec::new();
        for (i, e) in self.basis.iter().enumerate() {
            if !e.is_transitive() {
                continue;
            }
            let w = partition_witness(i, e)?;
            for &(_, rx, _) in &w.blocks {
                if !r.contains(rx) {
                    return Err(Error::Internal(format!("block value {} missing from R", k.name(rx))));
                }
            }
            witnesses.push(w);
        }
        Ok(Extraction { r, witnesses })
    }

    /// γ: (𝒞_S L, ℰ_S) → (K, ℰ) extending the embedding of L = ⟨R⟩.
    pub fn gamma(&self, caps: &Caps) -> Result<Gamma> {
        let k = &self.frame;
        let ex = self.extract_r()?;
        let frm = Sublattice::subframe_generated(k, ex.r.iter());
        let (l, embedding) = frm.to_frame();
        let s = Sublattice::whole(&l);
        let (congruences, domain) = frith_quasi_uniformity(&l, &s, caps)?;
        let map = extend_hom(&embedding, &congruences)?;
        let cmp = domain.image_filter(&map, self);
        let generates_filter = cmp.image_within_target && cmp.target_within_image;
        Ok(Gamma {
            is_dense: map.is_dense(),
            is_surjective: map.is_surjective(),
            is_iso: map.is_isomorphism(),
            generates_filter,
            l,
            embedding,
            r: ex.r,
            congruences,
            domain,
            map,
        })
    }
}

fn partition_witness(basis_index: usize, e: &CIdeal) -> Result<PartitionWitness> {
    let k = e.left();
    let diag: Vec<Elem> = e.diagonal().into_iter().filter(|&a| a != k.bottom()).collect();
    let cover: Vec<Elem> = diag
        .iter()
        .copied()
        .filter(|&a| !diag.iter().any(|&b| k.lt(a, b)))
        .collect();
    let mut partition = cover.clone();
    'merge: loop {
        for i in 0..partition.len() {
            for j in i + 1..partition.len() {
                let (x, y) = (partition[i], partition[j]);
                if k.meet(x, y) != k.bottom() {
                    let z = k.join(x, y);
                    if !e.contains(z, z) {
                        return Err(Error::Internal("merged block left the diagonal".into()));
                    }
                    partition.retain(|&w| !k.le(w, z));
                    partition.push(z);
                    continue 'merge;
                }
            }
        }
        break;
    }
    partition.sort();
    let mut blocks = Vec::new();
    let mut meet = CIdeal::top(k, k);
    for &x in &partition {
        let rx = k.join_all(partition.iter().copied().filter(|&y| !e.contains(x, y)));
        let rxs = k.join_all(partition.iter().copied().filter(|&z| e.contains(x, z)));
        if k.complement(rx) != Some(rxs) {
            return Err(Error::Internal(format!("block value {} lacks the expected complement", k.name(rx))));
        }
        meet = meet.meet(&CIdeal::e_r(k, rx));
        blocks.push((x, rx, rxs));
    }
    if meet != *e {
        return Err(Error::Internal("entourage differs from the meet of its block entourages".into()));
    }
    Ok(PartitionWitness { basis_index, cover, partition, blocks })
}

/// (𝒞_S L, ℰ_S) with subbasis {E_{∇s} : s ∈ S}.
pub fn frith_quasi_uniformity(
    l: &FiniteFrame,
    s: &Sublattice,
    caps: &Caps,
) -> Result<(CongruenceFrame, QuasiUniformity)> {
    let cf = CongruenceFrame::relative(l, s, caps)?;
    let k = cf.structure().clone();
    let q = QuasiUniformity::from_sublattice(&k, s.iter().map(|x| cf.nabla(x)))?;
    Ok((cf, q))
}
