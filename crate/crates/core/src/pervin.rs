//! Finite Pervin spaces: a point set with a bounded sublattice of its powerset.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::congruence::{is_generated_by_restriction, Congruence};
use crate::error::{Error, Result};
use crate::lattice::poset::{bit, ones};
use crate::lattice::{Elem, FiniteFrame};

/// Subsets of the universe are bit masks over point indices.
pub type PointSet = u64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PervinSpace {
    universe: Vec<String>,
    lattice: Vec<PointSet>,
}

impl fmt::Debug for PervinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self.lattice.iter().map(|&s| self.set_name(s)).collect();
        write!(f, "Pervin({{{}}}; {})", self.universe.join(","), sets.join(" "))
    }
}

fn full_mask(n: usize) -> PointSet {
    if n == 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

/// Closure of `gens ∪ {∅, X}` under the given binary operations (and complement when asked).
fn close_family(n: usize, gens: &[PointSet], complements: bool) -> Vec<PointSet> {
    let full = full_mask(n);
    let mut set: HashSet<PointSet> = HashSet::new();
    let mut list = Vec::new();
    for s in [0, full].iter().chain(gens) {
        if set.insert(*s) {
            list.push(*s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        let mut new = Vec::new();
        if complements {
            new.push(full & !x);
        }
        for &y in &list[..=i] {
            new.push(x & y);
            new.push(x | y);
        }
        for s in new {
            if set.insert(s) {
                list.push(s);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

impl PervinSpace {
    /// Checked constructor.
    pub fn new(universe: Vec<String>, lattice: impl IntoIterator<Item = PointSet>) -> Result<PervinSpace> {
        let n = universe.len();
        if n > 64 {
            return Err(Error::CapExceeded { what: "universe points", limit: 64 });
        }
        let mut names = HashSet::new();
        if let Some(d) = universe.iter().find(|u| !names.insert(u.as_str())) {
            return Err(Error::Precondition(format!("duplicate point {d:?}")));
        }
        let full = full_mask(n);
        let mut lattice: Vec<PointSet> = lattice.into_iter().collect();
        lattice.sort_unstable();
        lattice.dedup();
        if lattice.iter().any(|&s| s & !full != 0) {
            return Err(Error::Precondition("a member is not a subset of the universe".into()));
        }
        let present: HashSet<PointSet> = lattice.iter().copied().collect();
        if !present.contains(&0) || !present.contains(&full) {
            return Err(Error::Precondition("the lattice must contain ∅ and the universe".into()));
        }
        for &a in &lattice {
            for &b in &lattice {
                if !present.contains(&(a | b)) || !present.contains(&(a & b)) {
                    return Err(Error::Precondition("the lattice is not closed under ∪ and ∩".into()));
                }
            }
        }
        Ok(PervinSpace { universe, lattice })
    }

    /// Bounded sublattice of 𝒫(X) generated by `gens`.
    pub fn generated(universe: Vec<String>, gens: &[PointSet]) -> Result<PervinSpace> {
        let n = universe.len();
        PervinSpace::new(universe, close_family(n, gens, false))
    }

    /// Points named a, b, c, ...
    pub fn default_universe(n: usize) -> Vec<String> {
        (0..n).map(crate::lattice::poset::default_point_name).collect()
    }

    pub fn discrete(universe: Vec<String>) -> PervinSpace {
        let n = universe.len();
        let gens: Vec<PointSet> = (0..n).map(bit).collect();
        PervinSpace::generated(universe, &gens).expect("discrete")
    }

    pub fn indiscrete(universe: Vec<String>) -> PervinSpace {
        PervinSpace::generated(universe, &[]).expect("indiscrete")
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn full(&self) -> PointSet {
        full_mask(self.size())
    }

    pub fn lattice(&self) -> &[PointSet] {
        &self.lattice
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.lattice.binary_search(&s).is_ok()
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|u| u == name)
    }

    pub fn set_name(&self, s: PointSet) -> String {
        let pts: Vec<&str> = ones(s).map(|i| self.universe[i].as_str()).collect();
        format!("{{{}}}", pts.join(","))
    }

    pub fn set_names(&self, s: PointSet) -> Vec<String> {
        ones(s).map(|i| self.universe[i].clone()).collect()
    }

    /// The generated topology, with a check that it is the lattice itself.
    pub fn omega_topology(&self) -> Result<Vec<PointSet>> {
        let topo = close_family(self.size(), &self.lattice, false);
        if topo != self.lattice {
            return Err(Error::Internal("finite lattice differs from its generated topology".into()));
        }
        Ok(topo)
    }

    /// Ω_𝒮(X) as a frame; element i corresponds to the i-th returned subset.
    pub fn frame(&self) -> Result<(FiniteFrame, Vec<PointSet>)> {
        let topo = self.omega_topology()?;
        let names: Vec<String> = topo.iter().map(|&s| self.set_name(s)).collect();
        let pos = |m: PointSet| topo.binary_search(&m).expect("closed family");
        let (frame, renaming) =
            FiniteFrame::from_lattice(names, |i, j| topo[i] & !topo[j] == 0, |i, j| pos(topo[i] | topo[j]))?;
        let mut sets = vec![0; topo.len()];
        for (i, &m) in topo.iter().enumerate() {
            sets[renaming[i].index()] = m;
        }
        Ok((frame, sets))
    }

    /// Points pairwise distinguished by some member of the lattice.
    pub fn is_t0(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (x + 1..n).all(|y| self.lattice.iter().any(|&s| (s >> x & 1) != (s >> y & 1)))
        })
    }

    /// Boolean subalgebra of 𝒫(X) generated by the lattice.
    pub fn psym(&self) -> PervinSpace {
        PervinSpace {
            universe: self.universe.clone(),
            lattice: close_family(self.size(), &self.lattice, true),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.lattice.iter().all(|&s| self.contains(self.full() & !s))
    }

    /// Topology generated by the lattice and the complements of its members.
    pub fn skula(&self) -> Vec<PointSet> {
        let mut gens = self.lattice.clone();
        gens.extend(self.lattice.iter().map(|&s| self.full() & !s));
        close_family(self.size(), &gens, false)
    }

    pub fn skula_is_discrete(&self) -> bool {
        let sk: HashSet<PointSet> = self.skula().into_iter().collect();
        (0..self.size()).all(|i| sk.contains(&bit(i)))
    }

    /// Subspace on `y` with its inclusion.
    pub fn subspace(&self, y: PointSet) -> Result<(PervinSpace, PervinMap)> {
        if y & !self.full() != 0 {
            return Err(Error::Precondition("subset outside the universe".into()));
        }
        let pts: Vec<usize> = ones(y).collect();
        let universe: Vec<String> = pts.iter().map(|&i| self.universe[i].clone()).collect();
        let restrict = |s: PointSet| {
            pts.iter()
                .enumerate()
                .filter(|&(_, &p)| s & bit(p) != 0)
                .fold(0, |m, (k, _)| m | bit(k))
        };
        let lattice: Vec<PointSet> = self.lattice.iter().map(|&s| restrict(s)).collect();
        let sub = PervinSpace::new(universe, lattice)?;
        let inc = PervinMap::new(sub.clone(), self.clone(), pts)?;
        Ok((sub, inc))
    }

    /// θ_Y on Ω_𝒮(X): generated by pairs of lattice members that agree on `y`.
    pub fn theta(&self, y: PointSet) -> Result<(FiniteFrame, Congruence)> {
        let (frame, sets) = self.frame()?;
        let mut pairs = Vec::new();
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate().skip(i + 1) {
                if a & y == b & y {
                    pairs.push((Elem::new(i), Elem::new(j)));
                }
            }
        }
        let c = Congruence::generated(&frame, pairs);
        Ok((frame, c))
    }

    /// Four independently computed forms of the T_D property.
    pub fn td_suite(&self) -> Result<TdReport> {
        let n = self.size();
        let full = self.full();
        let pervin_td = (0..n).all(|x| {
            self.lattice
                .iter()
                .any(|&s| s & bit(x) != 0 && self.contains(s & !bit(x)))
        });
        if n > 16 {
            return Err(Error::CapExceeded { what: "subsets for θ_Y injectivity", limit: 16 });
        }
        let (frame, _) = self.frame()?;
        let whole = crate::lattice::Sublattice::whole(&frame);
        let mut seen: HashSet<Congruence> = HashSet::new();
        let mut injective = true;
        for y in 0..=full {
            let (_, c) = self.theta(y)?;
            if !is_generated_by_restriction(&whole, &c) {
                return Err(Error::Internal("θ_Y is not generated by its restriction".into()));
            }
            injective &= seen.insert(c);
        }
        let mut no_trivial = true;
        for x in 0..n {
            let (_, c) = self.theta(full & !bit(x))?;
            if c.is_identity() {
                no_trivial = false;
            }
        }
        let skula_discrete = self.skula_is_discrete();
        let all = [pervin_td, injective, no_trivial, skula_discrete];
        Ok(TdReport {
            pervin_td,
            theta_injective: injective,
            no_trivial_point_removal: no_trivial,
            skula_discrete,
            agree: all.iter().all(|&b| b == all[0]),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TdReport {
    pub pervin_td: bool,
    pub theta_injective: bool,
    pub no_trivial_point_removal: bool,
    pub skula_discrete: bool,
    pub agree: bool,
}

/// A point map between Pervin spaces; `new` checks that preimages of members are members.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PervinMap {
    dom: PervinSpace,
    cod: PervinSpace,
    map: Vec<usize>,
}

impl fmt::Debug for PervinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}↦{}", self.dom.universe[i], self.cod.universe[j]))
            .collect();
        write!(f, "PervinMap[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PervinMapReport {
    pub is_epi: bool,
    pub is_mono: bool,
    pub is_extremal_mono: bool,
    pub is_iso: bool,
    pub dom_t0: bool,
    pub cod_t0: bool,
}

impl PervinMap {
    pub fn new(dom: PervinSpace, cod: PervinSpace, map: Vec<usize>) -> Result<PervinMap> {
        if map.len() != dom.size() || map.iter().any(|&j| j >= cod.size()) {
            return Err(Error::InvalidMorphism("map is not a total function between the universes".into()));
        }
        let f = PervinMap { dom, cod, map };
        if let Some(t) = f.cod.lattice.iter().find(|&&t| !f.dom.contains(f.preimage(t))) {
            return Err(Error::InvalidMorphism(format!(
                "preimage of {} is not in the domain lattice",
                f.cod.set_name(*t)
            )));
        }
        Ok(f)
    }

    pub fn identity(x: &PervinSpace) -> PervinMap {
        PervinMap { dom: x.clone(), cod: x.clone(), map: (0..x.size()).collect() }
    }

    pub fn dom(&self) -> &PervinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &PervinSpace {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn preimage(&self, t: PointSet) -> PointSet {
        self.map
            .iter()
            .enumerate()
            .filter(|&(_, &j)| t & bit(j) != 0)
            .fold(0, |m, (i, _)| m | bit(i))
    }

    pub fn image(&self, s: PointSet) -> PointSet {
        ones(s).fold(0, |m, i| m | bit(self.map[i]))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PervinMap) -> PervinMap {
        assert!(self.cod == g.dom, "composition of non-composable maps");
        PervinMap {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|&j| g.map[j]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.image(self.dom.full()) == self.cod.full()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.map.iter().all(|j| seen.insert(*j))
    }

    /// Every member of the domain lattice is the preimage of a codomain member.
    pub fn is_initial(&self) -> bool {
        let pre: HashSet<PointSet> = self.cod.lattice.iter().map(|&t| self.preimage(t)).collect();
        self.dom.lattice.iter().all(|s| pre.contains(s))
    }

    pub fn predicates(&self) -> PervinMapReport {
        let inj = self.is_injective();
        let surj = self.is_surjective();
        PervinMapReport {
            is_epi: surj,
            is_mono: inj,
            is_extremal_mono: inj && self.is_initial(),
            is_iso: inj && surj && self.is_initial(),
            dom_t0: self.dom.is_t0(),
            cod_t0: self.cod.is_t0(),
        }
    }

    /// All Pervin maps `dom → cod`.
    pub fn enumerate(dom: &PervinSpace, cod: &PervinSpace) -> Vec<PervinMap> {
        let (n, m) = (dom.size(), cod.size());
        if m == 0 {
            return if n == 0 {
                vec![PervinMap { dom: dom.clone(), cod: cod.clone(), map: vec![] }]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            if let Ok(f) = PervinMap::new(dom.clone(), cod.clone(), digits.clone()) {
                out.push(f);
            }
            let mut k = 0;
            while k < n {
                digits[k] += 1;
                if digits[k] < m {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == n {
                return out;
            }
        }
    }
}

/// Two-point space {0, 1} with lattice {∅, {0,1}}.
pub fn two_point_indiscrete() -> PervinSpace {
    PervinSpace::indiscrete(vec!["0".into(), "1".into()])
}

/// Equalizer of two maps into the indiscrete two-point space that agree exactly on `y`.
/// Returns the subset the equalizer carves out, computed from the pair of maps.
pub fn equalizer_subset(x: &PervinSpace, y: PointSet) -> PointSet {
    let t = two_point_indiscrete();
    let chi = PervinMap::new(x.clone(), t.clone(), (0..x.size()).map(|i| usize::from(y & bit(i) == 0)).collect())
        .expect("maps into an indiscrete space are continuous");
    let zero = PervinMap::new(x.clone(), t, vec![0; x.size()]).expect("constant map");
    (0..x.size())
        .filter(|&i| chi.apply(i) == zero.apply(i))
        .fold(0, |m, i| m | bit(i))
}
