//! Frame congruences, the congruence frames 𝒞L and 𝒞_S L, and extension of homomorphisms.
//!
//! A congruence of a finite distributive lattice is determined by the set Q of
//! join-irreducibles it collapses onto their unique lower cover; it is then the kernel of
//! x ↦ x \ Q on down-sets. That encoding drives the fast constructions; the partition
//! closure routines are kept as an independent route and compared on small frames.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::poset::{bit, ones};
use crate::lattice::{Elem, FiniteFrame, FrameHom, Poset, Sublattice};

/// A congruence stored as a partition: `rep[x]` is the least element of x's block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    frame: FiniteFrame,
    rep: Vec<Elem>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&e| self.frame.name(e)).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "Congruence{{{}}}", blocks.join(" | "))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so that roots are block minima
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
        true
    }
}

impl Congruence {
    /// Partition by the value of `key`.
    pub fn kernel_of<K: std::hash::Hash + Eq>(l: &FiniteFrame, key: impl Fn(Elem) -> K) -> Congruence {
        let mut first: HashMap<K, Elem> = HashMap::new();
        let rep = l.elements().map(|x| *first.entry(key(x)).or_insert(x)).collect();
        Congruence { frame: l.clone(), rep }
    }

    pub fn identity(l: &FiniteFrame) -> Congruence {
        Congruence { frame: l.clone(), rep: l.elements().collect() }
    }

    pub fn all(l: &FiniteFrame) -> Congruence {
        Congruence { frame: l.clone(), rep: vec![l.bottom(); l.len()] }
    }

    /// Kernel of a map.
    pub fn kernel(h: &FrameHom) -> Congruence {
        Congruence::kernel_of(h.dom(), |x| h.apply(x))
    }

    /// Checked constructor from explicit blocks covering every element exactly once.
    pub fn from_blocks(l: &FiniteFrame, blocks: &[Vec<Elem>]) -> Result<Congruence> {
        let mut rep = vec![None; l.len()];
        for b in blocks {
            let Some(&m) = b.iter().min() else {
                return Err(Error::Precondition("empty block".into()));
            };
            for &x in b {
                if x.index() >= l.len() || rep[x.index()].replace(m).is_some() {
                    return Err(Error::Precondition(format!("{x} appears twice or is out of range")));
                }
            }
        }
        let rep: Option<Vec<Elem>> = rep.into_iter().collect();
        let rep = rep.ok_or_else(|| Error::Precondition("blocks do not cover the frame".into()))?;
        let c = Congruence { frame: l.clone(), rep };
        if let Some(why) = c.violation() {
            return Err(Error::Precondition(why));
        }
        Ok(c)
    }

    /// Least congruence containing `pairs`: union-find seeding, then saturation under
    /// translations x ↦ x∨j (j join-irreducible) and x ↦ x∧m (m meet-irreducible), which
    /// generate all join and meet translations.
    pub fn generated(l: &FiniteFrame, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Congruence {
        let mut uf = UnionFind::new(l.len());
        for (x, y) in pairs {
            uf.union(x.index(), y.index());
        }
        Congruence::saturate(l, uf)
    }

    fn saturate(l: &FiniteFrame, mut uf: UnionFind) -> Congruence {
        let jis = l.join_irreducibles();
        let mis = l.meet_irreducibles();
        loop {
            let mut changed = false;
            for x in l.elements() {
                let r = Elem::new(uf.find(x.index()));
                if r == x {
                    continue;
                }
                for &c in &jis {
                    changed |= uf.union(l.join(x, c).index(), l.join(r, c).index());
                }
                for &c in &mis {
                    changed |= uf.union(l.meet(x, c).index(), l.meet(r, c).index());
                }
            }
            if !changed {
                break;
            }
        }
        let rep = (0..l.len()).map(|i| Elem::new(uf.find(i))).collect();
        Congruence { frame: l.clone(), rep }
    }

    /// ∇_a = {(x, y) : x ∨ a = y ∨ a}.
    pub fn nabla(l: &FiniteFrame, a: Elem) -> Congruence {
        Congruence::kernel_of(l, |x| l.join(x, a))
    }

    /// Δ_a = {(x, y) : x ∧ a = y ∧ a}.
    pub fn delta(l: &FiniteFrame, a: Elem) -> Congruence {
        Congruence::kernel_of(l, |x| l.meet(x, a))
    }

    /// Congruence θ_Q collapsing the join-irreducibles in `q` (a point mask).
    pub fn from_jmask(l: &FiniteFrame, q: u64) -> Congruence {
        Congruence::kernel_of(l, |x| l.mask(x) & !q)
    }

    /// The join-irreducibles identified with their lower cover.
    pub fn jmask(&self) -> u64 {
        let l = &self.frame;
        let p = l.jir();
        (0..p.size())
            .filter(|&i| {
                let j = l.from_mask(p.below(i)).expect("principal down-set");
                let lower = l.from_mask(p.below(i) & !bit(i)).expect("down-set");
                self.related(j, lower)
            })
            .fold(0, |m, i| m | bit(i))
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn rep(&self, x: Elem) -> Elem {
        self.rep[x.index()]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.rep
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.rep(x) == self.rep(y)
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut by_rep: Vec<Vec<Elem>> = vec![Vec::new(); self.frame.len()];
        for x in self.frame.elements() {
            by_rep[self.rep(x).index()].push(x);
        }
        by_rep.into_iter().filter(|b| !b.is_empty()).collect()
    }

    pub fn block_count(&self) -> usize {
        self.frame.elements().filter(|&x| self.rep(x) == x).count()
    }

    /// Related pairs (x, y) with x < y by index.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for b in self.blocks() {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.frame.len()
    }

    pub fn is_all(&self) -> bool {
        self.block_count() == 1
    }

    /// First compatibility failure, if any.
    pub fn violation(&self) -> Option<String> {
        let l = &self.frame;
        for x in l.elements() {
            let r = self.rep(x);
            if r == x {
                continue;
            }
            for c in l.elements() {
                if !self.related(l.join(x, c), l.join(r, c)) || !self.related(l.meet(x, c), l.meet(r, c)) {
                    return Some(format!(
                        "{} ≡ {} is not compatible with {}",
                        l.name(x),
                        l.name(r),
                        l.name(c)
                    ));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// Inclusion of relations.
    pub fn le(&self, other: &Congruence) -> bool {
        self.frame.elements().all(|x| other.related(x, self.rep(x)))
    }

    /// Intersection.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        Congruence::kernel_of(&self.frame, |x| (self.rep(x), other.rep(x)))
    }

    /// Generated closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.frame.len());
        for x in self.frame.elements() {
            uf.union(x.index(), self.rep(x).index());
            uf.union(x.index(), other.rep(x).index());
        }
        Congruence::saturate(&self.frame, uf)
    }

    pub fn meet_all<'a>(l: &FiniteFrame, it: impl IntoIterator<Item = &'a Congruence>) -> Congruence {
        it.into_iter().fold(Congruence::all(l), |acc, c| acc.meet(c))
    }

    pub fn join_all<'a>(l: &FiniteFrame, it: impl IntoIterator<Item = &'a Congruence>) -> Congruence {
        let mut uf = UnionFind::new(l.len());
        for c in it {
            for x in l.elements() {
                uf.union(x.index(), c.rep(x).index());
            }
        }
        Congruence::saturate(l, uf)
    }

    /// Related pairs with both sides in `s`.
    pub fn restrict(&self, s: &Sublattice) -> Vec<(Elem, Elem)> {
        self.pairs()
            .into_iter()
            .filter(|&(x, y)| s.contains(x) && s.contains(y))
            .collect()
    }

    /// Block lists by element name.
    pub fn named_blocks(&self) -> Vec<Vec<String>> {
        self.blocks()
            .iter()
            .map(|b| b.iter().map(|&e| self.frame.name(e).to_string()).collect())
            .collect()
    }
}

/// The eight identities relating ∇, Δ and the lattice operations, each checked on
/// every pair of elements and on the empty and full families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NablaDeltaLaws {
    pub delta_bottom_is_all: bool,
    pub delta_top_is_identity: bool,
    pub nabla_bottom_is_identity: bool,
    pub nabla_top_is_all: bool,
    pub delta_join_is_delta_meet: bool,
    pub delta_meets_are_delta_joins: bool,
    pub nabla_joins_are_nabla_joins: bool,
    pub nabla_meet_is_nabla_meet: bool,
}

impl NablaDeltaLaws {
    pub fn check(l: &FiniteFrame) -> NablaDeltaLaws {
        let nab: Vec<Congruence> = l.elements().map(|a| Congruence::nabla(l, a)).collect();
        let del: Vec<Congruence> = l.elements().map(|a| Congruence::delta(l, a)).collect();
        let (bot, top) = (l.bottom().index(), l.top().index());
        let pairs: Vec<(Elem, Elem)> = l.elements().flat_map(|a| l.elements().map(move |b| (a, b))).collect();
        let all: Vec<Elem> = l.elements().collect();
        let families: Vec<Vec<Elem>> = [vec![], all]
            .into_iter()
            .chain(pairs.iter().map(|&(a, b)| vec![a, b]))
            .collect();
        NablaDeltaLaws {
            delta_bottom_is_all: del[bot].is_all(),
            delta_top_is_identity: del[top].is_identity(),
            nabla_bottom_is_identity: nab[bot].is_identity(),
            nabla_top_is_all: nab[top].is_all(),
            delta_join_is_delta_meet: pairs
                .iter()
                .all(|&(a, b)| del[a.index()].join(&del[b.index()]) == del[l.meet(a, b).index()]),
            delta_meets_are_delta_joins: families.iter().all(|fam| {
                Congruence::meet_all(l, fam.iter().map(|a| &del[a.index()]))
                    == del[l.join_all(fam.iter().copied()).index()]
            }),
            nabla_joins_are_nabla_joins: families.iter().all(|fam| {
                Congruence::join_all(l, fam.iter().map(|a| &nab[a.index()]))
                    == nab[l.join_all(fam.iter().copied()).index()]
            }),
            nabla_meet_is_nabla_meet: pairs
                .iter()
                .all(|&(a, b)| nab[a.index()].meet(&nab[b.index()]) == nab[l.meet(a, b).index()]),
        }
    }

    pub fn all_hold(&self) -> bool {
        [
            self.delta_bottom_is_all,
            self.delta_top_is_identity,
            self.nabla_bottom_is_identity,
            self.nabla_top_is_all,
            self.delta_join_is_delta_meet,
            self.delta_meets_are_delta_joins,
            self.nabla_joins_are_nabla_joins,
            self.nabla_meet_is_nabla_meet,
        ]
        .iter()
        .all(|&b| b)
    }
}

/// Quotient frame L/θ with its surjection. Blocks are named by their largest element.
pub fn quotient(l: &FiniteFrame, theta: &Congruence) -> (FiniteFrame, FrameHom) {
    let reps: Vec<Elem> = l.elements().filter(|&x| theta.rep(x) == x).collect();
    let pos: HashMap<Elem, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut top_of = vec![l.bottom(); reps.len()];
    for x in l.elements() {
        let b = pos[&theta.rep(x)];
        top_of[b] = l.join(top_of[b], x);
    }
    let names: Vec<String> = top_of.iter().map(|&t| l.name(t).to_string()).collect();
    let (q, renaming) = FiniteFrame::from_lattice(
        names,
        |i, j| theta.rep(l.join(reps[i], reps[j])) == reps[j],
        |i, j| pos[&theta.rep(l.join(reps[i], reps[j]))],
    )
    .expect("quotient of a distributive lattice by a congruence is distributive");
    let h = FrameHom::from_fn(l, &q, |x| renaming[pos[&theta.rep(x)]]);
    (q, h)
}

/// Is θ generated by its restriction to S × S?
pub fn is_generated_by_restriction(s: &Sublattice, theta: &Congruence) -> bool {
    Congruence::generated(s.parent(), theta.restrict(s)) == *theta
}

/// The frame 𝒞L or a subframe 𝒞_S L, each congruence carried by its join-irreducible mask.
#[derive(Clone, Debug)]
pub struct CongruenceFrame {
    base: FiniteFrame,
    relative: Option<Sublattice>,
    structure: FiniteFrame,
    qmasks: Vec<u64>,
    by_q: HashMap<u64, Elem>,
}

fn close_masks(gens: &[u64], full: u64, limit: usize) -> Result<Vec<u64>> {
    let mut set: HashSet<u64> = HashSet::new();
    let mut list: Vec<u64> = Vec::new();
    for &g in [0, full].iter().chain(gens) {
        if set.insert(g) {
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            for m in [list[i] & list[j], list[i] | list[j]] {
                if set.insert(m) {
                    if list.len() >= limit {
                        return Err(Error::CapExceeded { what: "congruences", limit });
                    }
                    list.push(m);
                }
            }
        }
        i += 1;
    }
    list.sort_unstable();
    Ok(list)
}

impl CongruenceFrame {
    /// 𝒞L for the whole frame.
    pub fn full(l: &FiniteFrame, caps: &Caps) -> Result<CongruenceFrame> {
        let n = l.jir().size();
        if n >= 63 || (1usize << n) > caps.max_congruences {
            return Err(Error::CapExceeded { what: "congruences", limit: caps.max_congruences });
        }
        let antichain = Poset::new(l.jir().names().to_vec(), &[])?;
        let structure = FiniteFrame::from_poset_capped(antichain, &Caps::unbounded())?;
        let qmasks: Vec<u64> = structure.elements().map(|e| structure.mask(e)).collect();
        CongruenceFrame::finish(l, None, structure, qmasks)
    }

    /// 𝒞_S L: the subframe generated by all ∇_a (a ∈ L) and Δ_s (s ∈ S).
    pub fn relative(l: &FiniteFrame, s: &Sublattice, caps: &Caps) -> Result<CongruenceFrame> {
        if s.parent() != l {
            return Err(Error::Precondition("sublattice of a different frame".into()));
        }
        let full = l.jir().full_mask();
        let mut gens: Vec<u64> = l.elements().map(|a| l.mask(a)).collect();
        gens.extend(s.iter().map(|x| full & !l.mask(x)));
        let list = close_masks(&gens, full, caps.max_congruences)?;
        CongruenceFrame::from_mask_list(l, Some(s.clone()), list)
    }

    /// Subframe generated by ∇_s and Δ_s for s ∈ S only.
    pub fn relative_by_lattice_part(l: &FiniteFrame, s: &Sublattice, caps: &Caps) -> Result<CongruenceFrame> {
        let full = l.jir().full_mask();
        let mut gens: Vec<u64> = s.iter().map(|x| l.mask(x)).collect();
        gens.extend(s.iter().map(|x| full & !l.mask(x)));
        let list = close_masks(&gens, full, caps.max_congruences)?;
        CongruenceFrame::from_mask_list(l, Some(s.clone()), list)
    }

    fn from_mask_list(l: &FiniteFrame, relative: Option<Sublattice>, list: Vec<u64>) -> Result<CongruenceFrame> {
        let names: Vec<String> = (0..list.len()).map(|i| format!("#{i}")).collect();
        let pos: HashMap<u64, usize> = list.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let (structure, renaming) =
            FiniteFrame::from_lattice(names, |i, j| list[i] & !list[j] == 0, |i, j| pos[&(list[i] | list[j])])?;
        let mut qmasks = vec![0u64; list.len()];
        for (i, &m) in list.iter().enumerate() {
            qmasks[renaming[i].index()] = m;
        }
        CongruenceFrame::finish(l, relative, structure, qmasks)
    }

    fn finish(
        l: &FiniteFrame,
        relative: Option<Sublattice>,
        structure: FiniteFrame,
        qmasks: Vec<u64>,
    ) -> Result<CongruenceFrame> {
        let by_q: HashMap<u64, Elem> = qmasks.iter().enumerate().map(|(i, &q)| (q, Elem::new(i))).collect();
        let full = l.jir().full_mask();
        let mut labels: Vec<String> = Vec::with_capacity(qmasks.len());
        for &q in &qmasks {
            let label = if q == 0 {
                "id".to_string()
            } else if q == full {
                "all".to_string()
            } else if let Some(a) = l.from_mask(q) {
                format!("∇{}", l.name(a))
            } else if let Some(s) = l.from_mask(full & !q) {
                format!("Δ{}", l.name(s))
            } else {
                let pts: Vec<&str> = ones(q).map(|i| l.jir().name(i)).collect();
                format!("θ[{}]", pts.join(","))
            };
            labels.push(label);
        }
        let structure = structure.with_names(labels)?;
        let cf = CongruenceFrame { base: l.clone(), relative, structure, qmasks, by_q };
        if l.jir().size() <= 5 {
            cf.verify()?;
        }
        Ok(cf)
    }

    pub fn base(&self) -> &FiniteFrame {
        &self.base
    }

    /// The designated sublattice S for 𝒞_S L; `None` for the full 𝒞L.
    pub fn relative_to(&self) -> Option<&Sublattice> {
        self.relative.as_ref()
    }

    pub fn structure(&self) -> &FiniteFrame {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn jmask(&self, e: Elem) -> u64 {
        self.qmasks[e.index()]
    }

    pub fn congruence(&self, e: Elem) -> Congruence {
        Congruence::from_jmask(&self.base, self.jmask(e))
    }

    pub fn congruences(&self) -> Vec<Congruence> {
        self.structure.elements().map(|e| self.congruence(e)).collect()
    }

    /// Position of θ in this frame, if it belongs to it.
    pub fn elem_of(&self, theta: &Congruence) -> Option<Elem> {
        let q = theta.jmask();
        let e = *self.by_q.get(&q)?;
        (Congruence::from_jmask(&self.base, q) == *theta).then_some(e)
    }

    pub fn nabla(&self, a: Elem) -> Elem {
        self.by_q[&self.base.mask(a)]
    }

    pub fn delta(&self, a: Elem) -> Option<Elem> {
        let full = self.base.jir().full_mask();
        self.by_q.get(&(full & !self.base.mask(a))).copied()
    }

    /// The embedding a ↦ ∇_a.
    pub fn nabla_hom(&self) -> FrameHom {
        FrameHom::from_fn(&self.base, &self.structure, |a| self.nabla(a))
    }

    /// Check every meet and join against intersection and generated closure of partitions.
    pub fn verify(&self) -> Result<()> {
        let cs = self.congruences();
        for (i, ci) in cs.iter().enumerate() {
            if !ci.is_valid() {
                return Err(Error::Internal(format!("{ci:?} is not a congruence")));
            }
            if ci.jmask() != self.qmasks[i] {
                return Err(Error::Internal("join-irreducible encoding is not faithful".into()));
            }
            for (j, cj) in cs.iter().enumerate().skip(i) {
                let (ei, ej) = (Elem::new(i), Elem::new(j));
                let m = self.structure.meet(ei, ej);
                let jn = self.structure.join(ei, ej);
                if cs[m.index()] != ci.meet(cj) || cs[jn.index()] != ci.join(cj) {
                    return Err(Error::Internal(format!(
                        "lattice operations disagree with partitions at {ci:?}, {cj:?}"
                    )));
                }
                if self.structure.le(ei, ej) != ci.le(cj) {
                    return Err(Error::Internal("order disagrees with inclusion".into()));
                }
            }
        }
        Ok(())
    }
}

/// 𝒞L by the independent route: close {∇_a ∧ Δ_b} under meets and generated joins.
pub fn congruences_by_closure(l: &FiniteFrame, limit: usize) -> Result<Vec<Congruence>> {
    let nablas: Vec<Congruence> = l.elements().map(|a| Congruence::nabla(l, a)).collect();
    let deltas: Vec<Congruence> = l.elements().map(|a| Congruence::delta(l, a)).collect();
    let mut gens = Vec::new();
    for n in &nablas {
        for d in &deltas {
            gens.push(n.meet(d));
        }
    }
    close_partitions(l, gens, limit)
}

/// Subframe of 𝒞L generated by `gens`, closing under binary meets and generated joins.
pub fn close_partitions(l: &FiniteFrame, gens: Vec<Congruence>, limit: usize) -> Result<Vec<Congruence>> {
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut list: Vec<Congruence> = Vec::new();
    for c in [Congruence::identity(l), Congruence::all(l)].into_iter().chain(gens) {
        if seen.insert(c.clone()) {
            list.push(c);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            for c in [list[i].meet(&list[j]), list[i].join(&list[j])] {
                if !seen.contains(&c) {
                    if list.len() >= limit {
                        return Err(Error::CapExceeded { what: "congruences", limit });
                    }
                    seen.insert(c.clone());
                    list.push(c);
                }
            }
        }
        i += 1;
    }
    Ok(list)
}

/// The unique frame hom h̃ : 𝒞_S L → M with h̃ ∘ ∇ = h, when h sends S to complemented elements.
///
/// h̃(θ) = ⋁{ h(a) ∧ h(s)* : ∇_a ∧ Δ_s ⊆ θ }.
pub fn extend_hom(h: &FrameHom, cf: &CongruenceFrame) -> Result<FrameHom> {
    let l = h.dom();
    let m = h.cod();
    if cf.base() != l {
        return Err(Error::Precondition("congruence frame is over a different frame".into()));
    }
    if let Some(why) = h.hom_violation() {
        return Err(Error::InvalidMorphism(why));
    }
    let s_members: Vec<Elem> = match cf.relative_to() {
        Some(s) => s.iter().collect(),
        None => l.elements().collect(),
    };
    let mut comp = Vec::with_capacity(s_members.len());
    for &s in &s_members {
        let c = m.complement(h.apply(s)).ok_or_else(|| {
            Error::Precondition(format!(
                "{} is sent to {}, which is not complemented",
                l.name(s),
                m.name(h.apply(s))
            ))
        })?;
        comp.push((l.mask(s), c));
    }
    let avals: Vec<(u64, Elem)> = l.elements().map(|a| (l.mask(a), h.apply(a))).collect();
    let map: Vec<Elem> = cf
        .structure()
        .elements()
        .map(|t| {
            let q = cf.jmask(t);
            let mut acc = m.bottom();
            for &(am, ha) in &avals {
                for &(sm, hs_c) in &comp {
                    if am & !sm & !q == 0 {
                        acc = m.join(acc, m.meet(ha, hs_c));
                    }
                }
            }
            acc
        })
        .collect();
    let ext = FrameHom::new(cf.structure().clone(), m.clone(), map)?;
    if let Some(why) = ext.hom_violation() {
        return Err(Error::Internal(format!("extension is not a frame hom: {why}")));
    }
    for a in l.elements() {
        if ext.apply(cf.nabla(a)) != h.apply(a) {
            return Err(Error::Internal("extension does not restrict along ∇".into()));
        }
    }
    Ok(ext)
}

/// For h : L → M sending S into T, the induced h̄ : 𝒞_S L → 𝒞_T M with
/// h̄(∇_a) = ∇_{h(a)} and h̄(Δ_s) = Δ_{h(s)}.
pub fn lift_hom(h: &FrameHom, source: &CongruenceFrame, target: &CongruenceFrame) -> Result<FrameHom> {
    if target.base() != h.cod() {
        return Err(Error::Precondition("target congruence frame is over a different frame".into()));
    }
    if let (Some(s), Some(t)) = (source.relative_to(), target.relative_to()) {
        if let Some(x) = s.iter().find(|&x| !t.contains(h.apply(x))) {
            return Err(Error::InvalidMorphism(format!(
                "{} is not sent into the lattice part",
                h.dom().name(x)
            )));
        }
    }
    let into = h.then(&target.nabla_hom());
    let bar = extend_hom(&into, source)?;
    if let Some(s) = source.relative_to() {
        for x in s.iter() {
            let ds = source.delta(x).expect("Δ_s belongs to 𝒞_S L");
            if Some(bar.apply(ds)) != target.delta(h.apply(x)) {
                return Err(Error::Internal("lift does not send Δ_s to Δ_h(s)".into()));
            }
        }
    }
    Ok(bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::hom::is_isomorphic;

    fn c3() -> FiniteFrame {
        FiniteFrame::chain(3)
    }

    fn d4() -> FiniteFrame {
        FiniteFrame::boolean(2)
    }

    fn e(l: &FiniteFrame, n: &str) -> Elem {
        l.by_name(n).unwrap()
    }

    fn blocks(c: &Congruence) -> Vec<Vec<String>> {
        c.named_blocks()
    }

    #[test]
    fn generation_examples() {
        let c3 = c3();
        let m = e(&c3, "a");
        assert!(Congruence::generated(&c3, []).is_identity());
        let g = Congruence::generated(&c3, [(c3.bottom(), m)]);
        assert_eq!(blocks(&g), vec![vec!["0", "a"], vec!["1"]]);
        assert_eq!(g, Congruence::nabla(&c3, m));
        assert!(Congruence::generated(&c3, [(c3.bottom(), c3.top())]).is_all());
    }

    #[test]
    fn nabla_delta_examples() {
        for l in [FiniteFrame::two(), c3(), d4(), FiniteFrame::boolean(3)] {
            assert!(Congruence::nabla(&l, l.bottom()).is_identity());
            assert!(Congruence::nabla(&l, l.top()).is_all());
            assert!(Congruence::delta(&l, l.top()).is_identity());
            assert!(Congruence::delta(&l, l.bottom()).is_all());
            for a in l.elements() {
                assert_eq!(Congruence::nabla(&l, a), Congruence::generated(&l, [(l.bottom(), a)]));
                assert_eq!(Congruence::delta(&l, a), Congruence::generated(&l, [(a, l.top())]));
            }
        }
        let c3 = c3();
        assert_eq!(blocks(&Congruence::delta(&c3, e(&c3, "a"))), vec![vec!["0"], vec!["a", "1"]]);
        let d4 = d4();
        assert_eq!(
            blocks(&Congruence::nabla(&d4, e(&d4, "a"))),
            vec![vec!["0", "a"], vec!["b", "1"]]
        );
    }

    #[test]
    fn quotient_examples() {
        let c3 = c3();
        let (q, h) = quotient(&c3, &Congruence::identity(&c3));
        assert!(is_isomorphic(&q, &c3));
        assert!(h.is_isomorphism());
        let (q, h) = quotient(&c3, &Congruence::nabla(&c3, e(&c3, "a")));
        assert!(is_isomorphic(&q, &FiniteFrame::two()));
        assert!(h.is_frame_hom() && h.is_surjective());
        assert_eq!(Congruence::kernel(&h), Congruence::nabla(&c3, e(&c3, "a")));
        let d4 = d4();
        let (q, _) = quotient(&d4, &Congruence::nabla(&d4, e(&d4, "a")));
        assert!(is_isomorphic(&q, &FiniteFrame::two()));
    }

    #[test]
    fn congruence_frame_examples() {
        let caps = Caps::default();
        let two = FiniteFrame::two();
        assert!(is_isomorphic(CongruenceFrame::full(&two, &caps).unwrap().structure(), &two));
        let c3 = c3();
        let cf = CongruenceFrame::full(&c3, &caps).unwrap();
        assert_eq!(cf.len(), 4);
        assert!(is_isomorphic(cf.structure(), &d4()));
        assert!(is_isomorphic(CongruenceFrame::full(&d4(), &caps).unwrap().structure(), &d4()));
    }

    #[test]
    fn fast_and_closure_routes_agree() {
        let names = |n: usize| (0..n).map(crate::lattice::poset::default_point_name).collect::<Vec<_>>();
        let frames = vec![
            FiniteFrame::trivial(),
            c3(),
            d4(),
            FiniteFrame::chain(5),
            FiniteFrame::from_poset(Poset::new(names(4), &[(0, 2), (1, 2), (1, 3)]).unwrap()).unwrap(),
        ];
        for l in frames {
            let cf = CongruenceFrame::full(&l, &Caps::default()).unwrap();
            let brute: HashSet<Congruence> = congruences_by_closure(&l, 10_000).unwrap().into_iter().collect();
            let fast: HashSet<Congruence> = cf.congruences().into_iter().collect();
            assert_eq!(brute, fast);
        }
    }

    #[test]
    fn relative_examples() {
        let caps = Caps::default();
        let c3 = c3();
        let cf = CongruenceFrame::relative(&c3, &Sublattice::bounds(&c3), &caps).unwrap();
        assert_eq!(cf.len(), 3);
        assert!(is_isomorphic(cf.structure(), &FiniteFrame::chain(3)));
        let nabla = cf.nabla_hom();
        assert!(nabla.is_frame_hom() && nabla.is_injective());
        let full = CongruenceFrame::relative(&c3, &Sublattice::whole(&c3), &caps).unwrap();
        assert_eq!(full.len(), 4);
        let d4 = d4();
        let s = Sublattice::generated(&d4, [e(&d4, "a")]);
        assert_eq!(CongruenceFrame::relative(&d4, &s, &caps).unwrap().len(), 4);
    }

    #[test]
    fn extension_examples() {
        let caps = Caps::default();
        let d4 = d4();
        let cf = CongruenceFrame::full(&d4, &caps).unwrap();
        let ext = extend_hom(&FrameHom::identity(&d4), &cf).unwrap();
        let (a, b) = (e(&d4, "a"), e(&d4, "b"));
        assert_eq!(ext.apply(cf.nabla(a)), a);
        assert_eq!(ext.apply(cf.delta(a).unwrap()), b);

        let c3 = c3();
        let two = FiniteFrame::two();
        let up = FrameHom::checked(c3.clone(), two.clone(), vec![two.bottom(), two.top(), two.top()]).unwrap();
        let cf = CongruenceFrame::relative(&c3, &Sublattice::bounds(&c3), &caps).unwrap();
        let ext = extend_hom(&up, &cf).unwrap();
        assert_eq!(cf.nabla_hom().then(&ext), up);

        let idc3 = FrameHom::identity(&c3);
        let cf = CongruenceFrame::full(&c3, &caps).unwrap();
        match extend_hom(&idc3, &cf) {
            Err(Error::Precondition(msg)) => assert!(msg.contains('a')),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn extension_is_unique_among_enumerated_homs() {
        let caps = Caps::default();
        let c3 = c3();
        let d4 = d4();
        let cf = CongruenceFrame::full(&c3, &caps).unwrap();
        for h in FrameHom::enumerate(&c3, &d4, 100).unwrap() {
            let admissible = c3.elements().all(|x| d4.is_complemented(h.apply(x)));
            let matching: Vec<FrameHom> = FrameHom::enumerate(cf.structure(), &d4, 100)
                .unwrap()
                .into_iter()
                .filter(|g| cf.nabla_hom().then(g) == h)
                .collect();
            if admissible {
                assert_eq!(matching, vec![extend_hom(&h, &cf).unwrap()]);
            } else {
                assert!(extend_hom(&h, &cf).is_err());
            }
        }
    }

    #[test]
    fn frith_congruences_on_whole_lattice() {
        let d4 = d4();
        let s = Sublattice::whole(&d4);
        for c in CongruenceFrame::full(&d4, &Caps::default()).unwrap().congruences() {
            assert!(is_generated_by_restriction(&s, &c));
        }
        let c3 = c3();
        let two = FiniteFrame::two();
        let up = FrameHom::checked(c3.clone(), two.clone(), vec![two.bottom(), two.top(), two.top()]).unwrap();
        assert!(is_generated_by_restriction(&Sublattice::whole(&c3), &Congruence::kernel(&up)));
        assert!(is_generated_by_restriction(&Sublattice::bounds(&c3), &Congruence::identity(&c3)));
        assert!(is_generated_by_restriction(&Sublattice::bounds(&c3), &Congruence::all(&c3)));
    }

    #[test]
    fn lift_sends_generators_to_generators() {
        let caps = Caps::default();
        let c3 = c3();
        let two = FiniteFrame::two();
        let up = FrameHom::checked(c3.clone(), two.clone(), vec![two.bottom(), two.top(), two.top()]).unwrap();
        let src = CongruenceFrame::relative(&c3, &Sublattice::whole(&c3), &caps).unwrap();
        let tgt = CongruenceFrame::relative(&two, &Sublattice::whole(&two), &caps).unwrap();
        let bar = lift_hom(&up, &src, &tgt).unwrap();
        assert_eq!(src.nabla_hom().then(&bar), up.then(&tgt.nabla_hom()));
    }
}
