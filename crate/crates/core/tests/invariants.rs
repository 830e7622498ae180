use proptest::prelude::*;

use pfw_core::catalog::{self, rng};
use pfw_core::completion::c_and_c_star;
use pfw_core::congruence::{extend_hom, CongruenceFrame, NablaDeltaLaws};
use pfw_core::entourage::{saturate_pairs, CIdeal, QuasiUniformity};
use pfw_core::frith::FrithFrame;
use pfw_core::lattice::{Elem, FiniteFrame, FrameHom, Sublattice};
use pfw_core::spectrum::{hat, points};
use pfw_core::Caps;

fn frame(seed: u64, max_ji: usize) -> FiniteFrame {
    catalog::random_frame(&mut rng(seed), max_ji, &Caps::default()).unwrap()
}

fn pick(l: &FiniteFrame, k: usize) -> Elem {
    Elem::new(k % l.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nabla_delta_laws_hold(seed in any::<u64>()) {
        let l = frame(seed, 5);
        let laws = NablaDeltaLaws::check(&l);
        prop_assert!(laws.all_hold(), "{:?}", laws);
    }

    #[test]
    fn saturation_is_a_closure_operator(seed in any::<u64>(), picks in prop::collection::vec((0usize..64, 0usize..64), 0..5), extra in (0usize..64, 0usize..64)) {
        let l = frame(seed, 4);
        let seeds: Vec<(Elem, Elem)> = picks.iter().map(|&(a, b)| (pick(&l, a), pick(&l, b))).collect();
        let c = CIdeal::generated(&l, &l, seeds.iter().copied());
        prop_assert_eq!(&c, &saturate_pairs(&l, &l, &seeds));
        // extensive
        for &(x, y) in &seeds {
            prop_assert!(c.contains(x, y));
        }
        // idempotent
        prop_assert_eq!(&CIdeal::generated(&l, &l, c.pairs()), &c);
        // monotone
        let more: Vec<(Elem, Elem)> = seeds.iter().copied().chain([(pick(&l, extra.0), pick(&l, extra.1))]).collect();
        prop_assert!(c.le(&CIdeal::generated(&l, &l, more)));
    }

    #[test]
    fn entourages_refine_their_squares(seed in any::<u64>(), picks in prop::collection::vec((0usize..64, 0usize..64), 0..4)) {
        let l = frame(seed, 3);
        let seeds = picks.iter().map(|&(a, b)| (pick(&l, a), pick(&l, b))).chain([(l.top(), l.top())]);
        let e = CIdeal::generated(&l, &l, seeds);
        prop_assume!(e.is_entourage());
        let sq = e.compose(&e);
        prop_assert!(e.le(&sq));
        prop_assert_eq!(e.is_transitive(), sq == e);
    }

    #[test]
    fn extension_restricts_along_nabla(seed in any::<u64>(), target in 0usize..3) {
        let l = frame(seed, 3);
        let m = FiniteFrame::boolean(target);
        let caps = Caps::default();
        let cf = CongruenceFrame::full(&l, &caps).unwrap();
        for h in FrameHom::enumerate(&l, &m, 256).unwrap() {
            let ext = extend_hom(&h, &cf).unwrap();
            prop_assert_eq!(&cf.nabla_hom().then(&ext), &h);
        }
    }

    #[test]
    fn uniform_exactly_when_r_is_boolean(seed in any::<u64>()) {
        let inst = catalog::random_sublattice_instance(&mut rng(seed), &Caps::default()).unwrap();
        let q = QuasiUniformity::from_sublattice(&inst.k, inst.r.iter().copied()).unwrap();
        let r = catalog::generated(&inst);
        prop_assert_eq!(q.report().is_uniform, r.is_boolean());
    }

    #[test]
    fn extraction_recovers_the_generated_sublattice(seed in any::<u64>()) {
        let inst = catalog::random_sublattice_instance(&mut rng(seed), &Caps::default()).unwrap();
        let q = QuasiUniformity::from_sublattice(&inst.k, inst.r.iter().copied()).unwrap();
        let ex = q.extract_r().unwrap();
        prop_assert_eq!(ex.r, catalog::generated(&inst));
        prop_assert_eq!(ex.witnesses.len(), q.basis().iter().filter(|e| e.is_transitive()).count());
    }

    #[test]
    fn quasi_uniform_frames_are_zero_dimensional(seed in any::<u64>()) {
        let inst = catalog::random_sublattice_instance(&mut rng(seed), &Caps::default()).unwrap();
        let q = QuasiUniformity::from_sublattice(&inst.k, inst.r.iter().copied()).unwrap();
        if q.report().is_quasi_uniformity() {
            let k = &inst.k;
            let b: Vec<Elem> = k.elements().filter(|&x| k.is_complemented(x)).collect();
            for x in k.elements() {
                prop_assert_eq!(k.join_all(b.iter().copied().filter(|&c| k.le(c, x))), x);
            }
        }
    }

    #[test]
    fn hat_preserves_finite_meets_and_joins(seed in any::<u64>()) {
        let l = frame(seed, 5);
        let pts = points(&l).unwrap();
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(hat(&pts, l.meet(a, b)), hat(&pts, a) & hat(&pts, b));
                prop_assert_eq!(hat(&pts, l.join(a, b)), hat(&pts, a) | hat(&pts, b));
            }
        }
    }

    #[test]
    fn completion_is_a_right_inverse(seed in any::<u64>()) {
        let l = frame(seed, 4);
        let m = c_and_c_star(&FrithFrame::full(&l), &Caps::default()).unwrap();
        prop_assert!(m.right_inverse && m.galois_law && m.star_formula_agrees);
        prop_assert!(m.c.is_extremal_epi() && m.c.hom().is_dense());
    }

    #[test]
    fn td_conditions_coincide(seed in any::<u64>()) {
        let x = catalog::random_pervin(&mut rng(seed), 4);
        prop_assert!(x.td_suite().unwrap().agree);
    }

    #[test]
    fn psym_is_idempotent(seed in any::<u64>()) {
        let x = catalog::random_pervin(&mut rng(seed), 4);
        let s = x.psym();
        prop_assert!(s.is_symmetric());
        prop_assert_eq!(s.psym(), s);
    }

    #[test]
    fn frith_filters_generate_the_right_sublattices(seed in any::<u64>()) {
        let l = frame(seed, 3);
        let caps = Caps::default();
        let (cf, q) = pfw_core::entourage::frith_quasi_uniformity(&l, &Sublattice::whole(&l), &caps).unwrap();
        let w = q.witness_relations();
        let nablas: Vec<Elem> = l.elements().map(|a| cf.nabla(a)).collect();
        prop_assert_eq!(w.l1, Sublattice::subframe_generated(cf.structure(), nablas));
        prop_assert!(q.report().is_quasi_uniformity());
    }
}
