use gsw_core::fuzz::{self, InstanceParams, MonomialInstance, Suite};
use gsw_core::regularity::{
    local_cohomology, local_cohomology_via_ext, regularity, top_degree_finite_length, verify_symonds,
    zeroth_local_cohomology,
};
use gsw_core::resolution::{depth, euler_characteristic, krull_dimension, minimal_free_resolution, tor_via_koszul};
use gsw_core::{Degree, Field, Grading, Monomial, PolyRing, Polynomial, PresentedModule, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> InstanceParams {
    InstanceParams {
        max_vars: 3,
        max_weight: 4,
        max_degree: 10,
        max_generators: 3,
        max_twist: 2,
    }
}

fn instance(seed: u64) -> MonomialInstance {
    MonomialInstance::random(&mut ChaCha8Rng::seed_from_u64(seed), &small())
}

fn module(inst: &MonomialInstance) -> PresentedModule<Rationals> {
    inst.module(&inst.ring(Rationals).unwrap()).unwrap()
}

fn monomial(ring: &PolyRing<Rationals>, e: &[u32]) -> Polynomial<Rationals> {
    let mut sorted = vec![0; e.len()];
    for (i, &x) in e.iter().enumerate() {
        sorted[ring.grading.sorted_index(i)] = x;
    }
    Polynomial::monomial(ring, Monomial::from_exponents(&sorted).unwrap(), ring.field.one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_keeps_exactly_the_high_pieces(seed in any::<u64>(), dr in -2i64..8) {
        let m = module(&instance(seed));
        let r = m.min_generator_degree().map_or(0, |d| d.value()) + dr;
        let t = m.truncate(r).unwrap();
        for d in r - 4..r + 12 {
            let expect = if d >= r { m.hilbert_function(&Degree::scalar(d)).unwrap() } else { 0 };
            prop_assert_eq!(t.hilbert_function(&Degree::scalar(d)).unwrap(), expect, "degree {}", d);
        }
    }

    #[test]
    fn euler_characteristic_is_the_hilbert_function(seed in any::<u64>()) {
        let m = module(&instance(seed));
        let g = m.ring().grading.clone();
        let b = minimal_free_resolution(&m).unwrap().betti_table();
        for d in -3..25 {
            let d = Degree::scalar(d);
            prop_assert_eq!(euler_characteristic(&b, &g, &d), m.hilbert_function(&d).unwrap() as i64);
        }
    }

    #[test]
    fn local_cohomology_lives_between_depth_and_dimension(seed in any::<u64>()) {
        let m = module(&instance(seed));
        let g = &m.ring().grading;
        let b = minimal_free_resolution(&m).unwrap().betti_table();
        let (e, dim) = (depth(&b, g).unwrap(), krull_dimension(&b, g).unwrap());
        let s = local_cohomology(&m).unwrap();
        for (i, d) in s.max_degree.iter().enumerate() {
            if i < e || i > dim {
                prop_assert!(d.is_none(), "H^{} nonzero with depth {} and dimension {}", i, e, dim);
            }
        }
        prop_assert!(s.max_degree[e].is_some());
        prop_assert!(s.max_degree[dim].is_some());
    }

    #[test]
    fn torsion_and_duality_agree_on_h0(seed in any::<u64>()) {
        let m = module(&instance(seed));
        let t = zeroth_local_cohomology(&m).unwrap();
        let via_ext = local_cohomology_via_ext(&m).unwrap();
        prop_assert_eq!(top_degree_finite_length(&t).unwrap(), via_ext.max_degree[0]);
    }

    #[test]
    fn koszul_regularity_dominates_weighted(seed in any::<u64>()) {
        let r = regularity(&module(&instance(seed))).unwrap();
        prop_assert!(r.koszul.value >= r.weighted.value);
    }

    #[test]
    fn koszul_homology_matches_resolution(seed in any::<u64>()) {
        let m = module(&instance(seed));
        let b = minimal_free_resolution(&m).unwrap().betti_table();
        let n = m.ring().nvars();
        let lo = m.min_generator_degree().unwrap().value();
        let hi = (0..=n).filter_map(|i| b.max_degree(i)).max().unwrap() + 1;
        for i in 0..=n {
            for a in lo..=hi {
                prop_assert_eq!(tor_via_koszul(&m, i, &Degree::scalar(a)), b.get_z(i, a));
            }
        }
    }

    /// The support scales by `λ` and Koszul regularity becomes
    /// `λ(r - 1) + 1` unless `H^0` binds.
    #[test]
    fn rescaled_regularity(seed in any::<u64>()) {
        prop_assert!(fuzz::run(Suite::Rescale, seed, 3).holds());
    }
}

/// Over weights (3,3) the Betti bound in index 1 is never reached by a
/// finite length module of weighted regularity 0: `F_2` forces `F_1` three
/// below its own top degree.
#[test]
fn equal_weights_index_one_bound_is_not_sharp() {
    let ring = PolyRing::new(Rationals, Grading::weighted(&[3, 3]).unwrap());
    for a in 1..4 {
        for b in 1..4 {
            let q = PresentedModule::quotient_ring(&ring, &[monomial(&ring, &[a, 0]), monomial(&ring, &[0, b])]).unwrap();
            let top = 3 * (a + b - 2) as i64;
            let m = q.twist(&Degree::scalar(top));
            let s = verify_symonds(&m).unwrap();
            assert_eq!(s.weighted_regularity, 0);
            assert!(s.holds());
            let betti = minimal_free_resolution(&m).unwrap().betti_table();
            let f1 = betti.max_degree(1).unwrap();
            let f2 = betti.max_degree(2).unwrap();
            assert!(f1 <= f2 - 3 && f1 < 1 + 4, "a {a} b {b}: F1 {f1}, F2 {f2}");
        }
    }
}

#[test]
fn finite_length_top_degree_matches_hilbert_function() {
    let ring = PolyRing::new(Rationals, Grading::weighted(&[1, 2, 3]).unwrap());
    let gens = [monomial(&ring, &[3, 0, 0]), monomial(&ring, &[0, 2, 0]), monomial(&ring, &[1, 0, 1]), monomial(&ring, &[0, 0, 2])];
    let q = PresentedModule::quotient_ring(&ring, &gens).unwrap();
    let top = (0..40).rev().find(|&d| q.hilbert_function(&Degree::scalar(d)).unwrap() > 0);
    assert_eq!(top_degree_finite_length(&q).unwrap(), top);
    assert_eq!(local_cohomology(&q).unwrap().max_degree[0], top);
    for t in [-3, 0, 5] {
        let m = q.twist(&Degree::scalar(t));
        assert_eq!(local_cohomology(&m).unwrap().max_degree[0], top.map(|d| d - t));
    }
}

#[test]
fn residue_field_over_three_weights() {
    let ring = PolyRing::new(Rationals, Grading::weighted(&[1, 2, 4]).unwrap());
    let k = PresentedModule::residue_field(&ring).unwrap();
    let r = regularity(&k).unwrap();
    assert_eq!(r.weighted.value, 0);
    assert_eq!(r.koszul.value, 0);
    let b = minimal_free_resolution(&k).unwrap().betti_table();
    let rows: Vec<Vec<i64>> = (0..4)
        .map(|i| b.degrees_at(i).iter().flat_map(|(d, m)| std::iter::repeat_n(d.value(), *m)).collect())
        .collect();
    assert_eq!(rows, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6], vec![7]]);
}
