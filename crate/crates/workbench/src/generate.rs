//! Seeded and exhaustive instance generation.

use pfw_core::catalog::{self, rng};
use pfw_core::entourage::QuasiUniformity;
use pfw_core::frith::FrithFrame;
use pfw_core::lattice::FiniteFrame;
use pfw_core::{Caps, Error};

use crate::schema::{Instance, Object};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    /// A random order on `--points` points, as a frame.
    Poset,
    /// A random frame with at most `--max-ji` join-irreducibles.
    Frame,
    /// A random frame with its whole lattice part.
    Frith,
    /// A random Pervin space on `--max-universe` points.
    Pervin,
    /// ℰ_R for a random frame K and random complemented R.
    Quni,
    /// Every frame with at most `--max-ji` join-irreducibles.
    Frames,
    /// Every Pervin space with at most `--max-universe` points.
    Pervins,
}

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub seed: u64,
    pub points: usize,
    pub max_ji: usize,
    pub max_universe: usize,
}

pub fn generate(kind: GenKind, p: GenParams, caps: &Caps) -> Result<Vec<Instance>, Error> {
    let mut r = rng(p.seed);
    let seed = p.seed;
    Caps::check("join-irreducibles", p.max_ji, caps.max_ji)?;
    Caps::check("universe", p.max_universe, caps.max_universe)?;
    Ok(match kind {
        GenKind::Poset => {
            let l = FiniteFrame::from_poset_capped(catalog::random_poset(&mut r, p.points, 0.4), caps)?;
            vec![Instance::new(format!("poset-{seed}"), Object::Frame(l))]
        }
        GenKind::Frame => {
            let l = catalog::random_frame(&mut r, p.max_ji, caps)?;
            vec![Instance::new(format!("frame-{seed}"), Object::Frame(l))]
        }
        GenKind::Frith => {
            let l = catalog::random_frame(&mut r, p.max_ji, caps)?;
            vec![Instance::new(format!("frith-{seed}"), Object::Frith(FrithFrame::full(&l)))]
        }
        GenKind::Pervin => {
            let x = catalog::random_pervin(&mut r, p.max_universe);
            vec![Instance::new(format!("pervin-{seed}"), Object::Pervin(x))]
        }
        GenKind::Quni => {
            let inst = catalog::random_sublattice_instance(&mut r, caps)?;
            let q = QuasiUniformity::from_sublattice(&inst.k, inst.r.iter().copied())?;
            vec![Instance::new(format!("quni-{seed}"), Object::Quni(q))]
        }
        GenKind::Frames => catalog::frames_by_ji(p.max_ji)
            .into_iter()
            .enumerate()
            .map(|(i, l)| Instance::new(format!("frame-{i}"), Object::Frame(l)))
            .collect(),
        GenKind::Pervins => catalog::pervin_catalog(p.max_universe)
            .into_iter()
            .enumerate()
            .map(|(i, x)| Instance::new(format!("pervin-{i}"), Object::Pervin(x)))
            .collect(),
    })
}
