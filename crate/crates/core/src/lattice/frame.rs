use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::poset::{bit, ones, Poset};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Index of an element inside its frame. Index 0 is the bottom, the last index is the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(u32);

impl Elem {
    pub fn new(i: usize) -> Elem {
        Elem(i as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

struct FrameData {
    jir: Poset,
    masks: Vec<u64>,
    index: HashMap<u64, u32>,
    names: Vec<String>,
    by_name: HashMap<String, u32>,
}

/// A finite distributive lattice stored as the down-sets of its join-irreducible poset.
///
/// Cloning is cheap; values are immutable.
#[derive(Clone)]
pub struct FiniteFrame(Arc<FrameData>);

impl PartialEq for FiniteFrame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.jir == other.0.jir && self.0.names == other.0.names)
    }
}

impl Eq for FiniteFrame {}

impl Hash for FiniteFrame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.jir.hash(state);
        self.0.names.hash(state);
    }
}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFrame{{{}}}", self.0.names.join(", "))
    }
}

impl FiniteFrame {
    pub fn from_poset(p: Poset) -> Result<FiniteFrame> {
        FiniteFrame::from_poset_capped(p, &Caps::default())
    }

    pub fn from_poset_capped(p: Poset, caps: &Caps) -> Result<FiniteFrame> {
        p.check_caps(caps)?;
        let masks = p.down_sets(caps.max_elements)?;
        let names = default_names(&p, &masks);
        Ok(FiniteFrame::assemble(p, masks, names))
    }

    fn assemble(jir: Poset, masks: Vec<u64>, names: Vec<String>) -> FiniteFrame {
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let by_name = names.iter().enumerate().map(|(i, n)| (n.clone(), i as u32)).collect();
        FiniteFrame(Arc::new(FrameData { jir, masks, index, names, by_name }))
    }

    /// The two-element frame.
    pub fn two() -> FiniteFrame {
        FiniteFrame::from_poset(Poset::antichain(1)).expect("two")
    }

    /// The one-element frame, where 0 = 1.
    pub fn trivial() -> FiniteFrame {
        FiniteFrame::from_poset(Poset::antichain(0)).expect("trivial")
    }

    /// The chain with `n ≥ 1` elements.
    pub fn chain(n: usize) -> FiniteFrame {
        FiniteFrame::from_poset(Poset::chain(n.saturating_sub(1))).expect("chain")
    }

    /// The Boolean algebra with `n` atoms.
    pub fn boolean(n: usize) -> FiniteFrame {
        FiniteFrame::from_poset(Poset::antichain(n)).expect("boolean")
    }

    /// Same frame with new element names (indexed by element).
    pub fn with_names(&self, names: Vec<String>) -> Result<FiniteFrame> {
        if names.len() != self.len() {
            return Err(Error::Precondition(format!(
                "{} names for {} elements",
                names.len(),
                self.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::Precondition(format!("duplicate element name {n:?}")));
            }
        }
        Ok(FiniteFrame::assemble(self.0.jir.clone(), self.0.masks.clone(), names))
    }

    /// Canonical frame of a distributive lattice given by its order and binary join on `0..n`.
    ///
    /// Returns the frame together with the position of each input item.
    pub fn from_lattice(
        names: Vec<String>,
        le: impl Fn(usize, usize) -> bool,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<(FiniteFrame, Vec<Elem>)> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotLattice("no elements".into()));
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or_else(|| Error::NotLattice("no least element".into()))?;
        let mut jis = Vec::new();
        for x in 0..n {
            if x == bottom {
                continue;
            }
            let mut j = bottom;
            for y in 0..n {
                if y != x && le(y, x) {
                    j = join(j, y);
                }
            }
            if j != x {
                jis.push(x);
            }
        }
        if jis.len() > 64 {
            return Err(Error::CapExceeded { what: "join-irreducibles", limit: 64 });
        }
        let ji_names: Vec<String> = jis.iter().map(|&x| names[x].clone()).collect();
        let jir = Poset::from_le(ji_names, |i, j| le(jis[i], jis[j]))?;
        let item_mask: Vec<u64> = (0..n)
            .map(|x| {
                jis.iter()
                    .enumerate()
                    .filter(|&(_, &j)| le(j, x))
                    .fold(0u64, |m, (i, _)| m | bit(i))
            })
            .collect();
        let masks = jir.down_sets(n)
            .map_err(|_| Error::NotLattice("order is not a distributive lattice".into()))?;
        if masks.len() != n {
            return Err(Error::NotLattice("order is not a distributive lattice".into()));
        }
        let index: HashMap<u64, u32> = masks.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let mut renaming = Vec::with_capacity(n);
        let mut new_names = vec![String::new(); n];
        let mut hit = vec![false; n];
        for x in 0..n {
            let pos = *index
                .get(&item_mask[x])
                .ok_or_else(|| Error::NotLattice("order is not a distributive lattice".into()))?
                as usize;
            if hit[pos] {
                return Err(Error::NotLattice("order is not a distributive lattice".into()));
            }
            hit[pos] = true;
            new_names[pos] = names[x].clone();
            renaming.push(Elem::new(pos));
        }
        let frame = FiniteFrame::assemble(jir, masks, new_names);
        Ok((frame, renaming))
    }

    /// Validate a lattice given by meet and join tables over named elements, then canonicalise.
    pub fn from_table(
        names: Vec<String>,
        meet: &[Vec<usize>],
        join: &[Vec<usize>],
    ) -> Result<(FiniteFrame, Vec<Elem>)> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotLattice("no elements".into()));
        }
        for (label, t) in [("meet", meet), ("join", join)] {
            if t.len() != n || t.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
                return Err(Error::NotLattice(format!("{label} table is not {n}×{n} over the elements")));
            }
        }
        let nm = |i: usize| names[i].clone();
        for x in 0..n {
            if meet[x][x] != x || join[x][x] != x {
                return Err(Error::NotLattice(format!("{} is not idempotent", nm(x))));
            }
            for y in 0..n {
                if meet[x][y] != meet[y][x] || join[x][y] != join[y][x] {
                    return Err(Error::NotLattice(format!("{} and {} do not commute", nm(x), nm(y))));
                }
                if meet[x][join[x][y]] != x || join[x][meet[x][y]] != x {
                    return Err(Error::NotLattice(format!("absorption fails for {} and {}", nm(x), nm(y))));
                }
                for z in 0..n {
                    if meet[meet[x][y]][z] != meet[x][meet[y][z]] || join[join[x][y]][z] != join[x][join[y][z]] {
                        return Err(Error::NotLattice(format!(
                            "associativity fails for {}, {}, {}",
                            nm(x),
                            nm(y),
                            nm(z)
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]] {
                        return Err(Error::NotDistributive { x: nm(x), y: nm(y), z: nm(z) });
                    }
                }
            }
        }
        FiniteFrame::from_lattice(names, |x, y| meet[x][y] == x, |x, y| join[x][y])
    }

    /// Meet and join tables indexed by element.
    pub fn tables(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        let mut j = vec![vec![0; n]; n];
        for x in self.elements() {
            for y in self.elements() {
                m[x.index()][y.index()] = self.meet(x, y).index();
                j[x.index()][y.index()] = self.join(x, y).index();
            }
        }
        (m, j)
    }

    pub fn jir(&self) -> &Poset {
        &self.0.jir
    }

    pub fn len(&self) -> usize {
        self.0.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when 0 = 1.
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + 'static {
        (0..self.len()).map(Elem::new)
    }

    pub fn bottom(&self) -> Elem {
        Elem(0)
    }

    pub fn top(&self) -> Elem {
        Elem::new(self.len() - 1)
    }

    pub fn mask(&self, e: Elem) -> u64 {
        self.0.masks[e.index()]
    }

    pub fn from_mask(&self, m: u64) -> Option<Elem> {
        self.0.index.get(&m).map(|&i| Elem(i))
    }

    fn elem_of(&self, m: u64) -> Elem {
        Elem(self.0.index[&m])
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.0.names[e.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn by_name(&self, name: &str) -> Option<Elem> {
        self.0.by_name.get(name).map(|&i| Elem(i))
    }

    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.mask(a) & !self.mask(b) == 0
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.le(a, b)
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.elem_of(self.mask(a) & self.mask(b))
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.elem_of(self.mask(a) | self.mask(b))
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        self.elem_of(it.into_iter().fold(0, |m, e| m | self.mask(e)))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        let full = self.mask(self.top());
        self.elem_of(it.into_iter().fold(full, |m, e| m & self.mask(e)))
    }

    /// Greatest x with x ∧ a = 0.
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        let am = self.mask(a);
        let p = &self.0.jir;
        let m = (0..p.size()).filter(|&i| p.below(i) & am == 0).fold(0, |m, i| m | bit(i));
        self.elem_of(m)
    }

    /// The complement of `a` when it exists.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        let c = self.pseudocomplement(a);
        (self.join(a, c) == self.top()).then_some(c)
    }

    pub fn is_complemented(&self, a: Elem) -> bool {
        self.complement(a).is_some()
    }

    /// The element ↓p for each join-irreducible point p.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        let p = &self.0.jir;
        (0..p.size()).map(|i| self.elem_of(p.below(i))).collect()
    }

    /// The largest element not above p, for each point p.
    pub fn meet_irreducibles(&self) -> Vec<Elem> {
        let p = &self.0.jir;
        let full = p.full_mask();
        (0..p.size()).map(|i| self.elem_of(full & !p.above(i))).collect()
    }

    /// Covering pairs (x, y) of the Hasse diagram.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let p = &self.0.jir;
        let mut out = Vec::new();
        for x in self.elements() {
            let m = self.mask(x);
            for i in 0..p.size() {
                if m & bit(i) == 0 && p.below(i) & !bit(i) & !m == 0 {
                    out.push((x, self.elem_of(m | bit(i))));
                }
            }
        }
        out
    }

    /// Elements below `a`.
    pub fn down_set(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.le(x, a)).collect()
    }

    /// Elements above `a`.
    pub fn up_set(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.le(a, x)).collect()
    }

    /// Cartesian product with coordinatewise order, plus the coordinates of each element.
    pub fn product(&self, other: &FiniteFrame) -> Result<(FiniteFrame, Vec<(Elem, Elem)>)> {
        let n1 = self.jir().size();
        let n2 = other.jir().size();
        if n1 + n2 > 64 {
            return Err(Error::CapExceeded { what: "join-irreducibles", limit: 64 });
        }
        let mut names: Vec<String> = self.jir().names().iter().map(|n| format!("{n}.1")).collect();
        names.extend(other.jir().names().iter().map(|n| format!("{n}.2")));
        let mut pairs = Vec::new();
        for (x, y) in self.jir().le_pairs() {
            pairs.push((x, y));
        }
        for (x, y) in other.jir().le_pairs() {
            pairs.push((x + n1, y + n1));
        }
        let jir = Poset::new(names, &pairs)?;
        let masks = jir.down_sets(usize::MAX)?;
        let mut elem_names = vec![String::new(); masks.len()];
        let mut coords = vec![(Elem(0), Elem(0)); masks.len()];
        let lo = if n1 == 64 { u64::MAX } else { bit(n1) - 1 };
        for (i, &m) in masks.iter().enumerate() {
            let a = self.elem_of(m & lo);
            let b = other.elem_of(if n1 == 64 { 0 } else { m >> n1 });
            elem_names[i] = format!("({},{})", self.name(a), other.name(b));
            coords[i] = (a, b);
        }
        Ok((FiniteFrame::assemble(jir, masks, elem_names), coords))
    }
}

/// Names for the elements of a down-set lattice: 0, 1, point names for principal
/// down-sets, and joins of maximal points otherwise.
fn default_names(p: &Poset, masks: &[u64]) -> Vec<String> {
    let full = p.full_mask();
    let mut names: Vec<String> = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "0".to_string()
            } else if m == full {
                "1".to_string()
            } else {
                let maximal: Vec<&str> = ones(m)
                    .filter(|&i| ones(m).all(|j| j == i || !p.le(i, j)))
                    .map(|i| p.name(i))
                    .collect();
                maximal.join("+")
            }
        })
        .collect();
    let mut count: HashMap<String, usize> = HashMap::new();
    for n in &names {
        *count.entry(n.clone()).or_default() += 1;
    }
    for (i, n) in names.iter_mut().enumerate() {
        if count[n.as_str()] > 1 {
            *n = format!("#{i}");
        }
    }
    names
}
