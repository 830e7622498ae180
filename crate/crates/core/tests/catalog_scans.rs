//! Exhaustive scans over the small catalogs.

use pfw_core::catalog;
use pfw_core::completion::{completeness_suite, symmetric_catalog};
use pfw_core::congruence::{is_generated_by_restriction, CongruenceFrame};
use pfw_core::entourage::{CIdeal, QuasiUniformity};
use pfw_core::frith::{FrithFrame, FrithHom};
use pfw_core::lattice::{FiniteFrame, FrameHom, Sublattice};
use pfw_core::oracle;
use pfw_core::pervin::{equalizer_subset, PervinMap};
use pfw_core::spectrum::{adjunction_check, alpha, alpha_naturality, omega_map};
use pfw_core::Caps;

fn frith_catalog() -> Vec<FrithFrame> {
    catalog::frames_by_ji(3).iter().map(FrithFrame::full).collect()
}

#[test]
fn every_congruence_of_a_finite_frame_is_frith() {
    let caps = Caps::default();
    for l in catalog::frames_by_ji(3) {
        let s = Sublattice::whole(&l);
        for theta in CongruenceFrame::full(&l, &caps).unwrap().congruences() {
            assert!(is_generated_by_restriction(&s, &theta));
        }
    }
}

#[test]
fn transitive_finite_entourages_are_closed_under_meets() {
    for l in catalog::frames_by_size(5) {
        let tr: Vec<CIdeal> = CIdeal::enumerate(&l, &l, 4096)
            .unwrap()
            .into_iter()
            .filter(|e| e.is_entourage() && e.is_transitive() && e.is_finite_by_diagonal())
            .collect();
        for a in &tr {
            assert_eq!(a.is_finite_by_diagonal(), a.is_finite_by_cover());
            for b in &tr {
                let m = a.meet(b);
                assert!(m.is_transitive() && m.is_finite_by_diagonal(), "{a:?} ∧ {b:?}");
            }
        }
    }
}

#[test]
fn extremal_monos_are_equalizers() {
    for x in catalog::pervin_catalog(3) {
        for y in 0..=x.full() {
            let (_, inc) = x.subspace(y).unwrap();
            assert!(inc.predicates().is_extremal_mono);
            assert_eq!(equalizer_subset(&x, y), y);
        }
    }
}

#[test]
fn psym_factorization_from_symmetric_spaces() {
    let spaces = catalog::pervin_catalog(3);
    for x in &spaces {
        let s = x.psym();
        let counit = PervinMap::new(s.clone(), x.clone(), (0..x.size()).collect()).unwrap();
        for z in spaces.iter().filter(|z| z.is_symmetric()) {
            for f in PervinMap::enumerate(z, x) {
                let lifts = PervinMap::enumerate(z, &s)
                    .into_iter()
                    .filter(|g| g.then(&counit) == f)
                    .count();
                assert_eq!(lifts, 1);
            }
        }
    }
}

#[test]
fn frith_universal_properties_of_products() {
    let caps = Caps::default();
    let objs: Vec<FrithFrame> = catalog::frames_by_ji(2).iter().map(FrithFrame::full).collect();
    for a in &objs {
        for b in &objs {
            let (p, pa, pb) = a.product(b).unwrap();
            for z in &objs {
                let into_a = FrithHom::enumerate(z, a, 256).unwrap();
                let into_b = FrithHom::enumerate(z, b, 256).unwrap();
                let into_p = FrithHom::enumerate(z, &p, 256).unwrap();
                for f in &into_a {
                    for g in &into_b {
                        let n = into_p
                            .iter()
                            .filter(|u| u.then(&pa).hom() == f.hom() && u.then(&pb).hom() == g.hom())
                            .count();
                        assert_eq!(n, 1);
                    }
                }
            }
            let (c, ia, ib) = a.coproduct(b, &caps).unwrap();
            for z in &objs {
                let from_c = FrithHom::enumerate(&c, z, 1024).unwrap();
                for f in FrithHom::enumerate(a, z, 256).unwrap() {
                    for g in FrithHom::enumerate(b, z, 256).unwrap() {
                        let n = from_c
                            .iter()
                            .filter(|u| ia.then(u).hom() == f.hom() && ib.then(u).hom() == g.hom())
                            .count();
                        assert_eq!(n, 1);
                    }
                }
            }
        }
    }
}

#[test]
fn predicate_relations_on_frith_frames() {
    for f in frith_catalog() {
        let p = f.predicates().unwrap();
        assert!(p.is_coherent && p.s_is_compact_elements);
        if p.is_compact && p.is_zero_dimensional {
            assert!(p.is_coherent);
        }
        let prox = f.proximity();
        assert!(prox.interpolates && prox.recovers_s && prox.equals_order);
    }
}

#[test]
fn adjunction_on_small_catalogs() {
    let caps = Caps::default();
    let spaces = catalog::pervin_catalog(2);
    for x in &spaces {
        for f in catalog::frames_by_ji(2).iter().map(FrithFrame::full) {
            let r = adjunction_check(x, &f, &caps).unwrap();
            assert!(r.bijection && r.is_spatial);
        }
    }
}

#[test]
fn omega_sends_extremal_monos_to_extremal_epis() {
    let spaces = catalog::pervin_catalog(3);
    for x in &spaces {
        for y in &spaces {
            for m in PervinMap::enumerate(x, y) {
                let om = omega_map(&m).unwrap();
                if m.predicates().is_extremal_mono {
                    assert!(om.is_extremal_epi());
                }
                if om.is_extremal_epi() && x.is_t0() {
                    assert!(m.predicates().is_extremal_mono, "{m:?}");
                }
            }
        }
    }
}

#[test]
fn alpha_is_natural() {
    let caps = Caps::default();
    let objs: Vec<FrithFrame> = catalog::frames_by_ji(2).iter().map(FrithFrame::full).collect();
    for a in &objs {
        assert!(alpha(a, &caps).unwrap().is_iso);
        for b in &objs {
            for h in FrithHom::enumerate(a, b, 256).unwrap() {
                assert!(alpha_naturality(&h, &caps).unwrap());
            }
        }
    }
}

#[test]
fn dense_extremal_epis_between_symmetric_frames_are_boolean_isos() {
    let sym = symmetric_catalog();
    for a in &sym {
        for b in &sym {
            for h in FrithHom::enumerate(a, b, 256).unwrap() {
                if h.hom().is_dense() && h.is_extremal_epi() {
                    let image: Vec<_> = a.s().iter().map(|s| h.apply(s)).collect();
                    assert!(h.hom().is_injective(), "{:?}", h.hom());
                    assert_eq!(image.len(), b.s().len());
                }
            }
        }
    }
}

#[test]
fn completeness_on_the_catalog() {
    let caps = Caps::default();
    let codomains: Vec<FiniteFrame> = catalog::frames_by_ji(2);
    for f in catalog::frames_by_ji(2).iter().map(FrithFrame::full) {
        let r = completeness_suite(&f, &codomains, &caps).unwrap();
        assert!(r.all_agree && r.completion_is_dense_extremal_epi && r.factorization_holds);
        assert!(r.completion_unique_symmetric);
    }
}

#[test]
fn ideal_reflection_on_the_catalog() {
    for l in catalog::frames_by_ji(2) {
        let il = pfw_core::completion::IdealLattice::new(&Sublattice::whole(&l), 4096).unwrap();
        for m in catalog::frames_by_ji(2) {
            let frame_homs = FrameHom::enumerate(il.frame(), &m, 4096).unwrap();
            let lattice_homs = FrameHom::enumerate(&l, &m, 4096).unwrap();
            assert_eq!(frame_homs.len(), lattice_homs.len());
            for h in &lattice_homs {
                let hat = il.extend(&m, |s| h.apply(s));
                assert!(frame_homs.contains(&hat));
            }
        }
    }
}

#[test]
fn coreflection_on_seeded_instances() {
    let caps = Caps::default();
    let targets: Vec<FrithFrame> = catalog::frames_by_ji(2).iter().map(FrithFrame::full).collect();
    for seed in 0..6 {
        let inst = catalog::random_generating_instance(&mut catalog::rng(seed), &caps).unwrap();
        let q = QuasiUniformity::from_sublattice(&inst.k, inst.r.iter().copied()).unwrap();
        for m in &targets {
            let r = oracle::coreflection_check(&q, m, &caps).unwrap();
            assert!(r.bijective, "seed {seed}: {r:?}");
        }
    }
}
