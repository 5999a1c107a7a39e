use gsw_core::lattice::Matrix;
use gsw_core::resolution::minimal_free_resolution;
use gsw_core::toric::{
    lemma_technical_check, multigraded_truncate, primitive_collections, tor_s_quotient, CoxData, Fan,
};
use gsw_core::{Degree, PresentedModule, Rationals};
use num_integer::Integer;

fn product_of_lines() -> Fan {
    Fan::new(
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn weighted_plane() -> Fan {
    Fan::new(
        vec![vec![1, 3], vec![1, -2], vec![-1, 0]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap()
}

/// Blow-up of the plane at a point.
fn blowup() -> Fan {
    Fan::new(
        vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn fans() -> Vec<Fan> {
    let mut out = vec![product_of_lines(), weighted_plane(), blowup()];
    out.extend((0..5).map(|a| Fan::hirzebruch(a).unwrap()));
    out.extend((1..4).map(|n| Fan::projective_space(n).unwrap()));
    out
}

/// Subsets contained in no cone and minimal with that property.
fn brute_force_collections(rays: usize, cones: &[Vec<usize>]) -> Vec<u32> {
    let in_cone = |s: u32| cones.iter().any(|c| (0..rays).all(|i| s & (1 << i) == 0 || c.contains(&i)));
    let mut out: Vec<u32> = (1u32..1 << rays)
        .filter(|&s| !in_cone(s))
        .filter(|&s| (0..rays).all(|i| s & (1 << i) == 0 || in_cone(s & !(1 << i))))
        .collect();
    out.sort();
    out
}

#[test]
fn primitive_collections_match_enumeration() {
    for fan in fans() {
        let mut got = primitive_collections(&fan);
        got.sort();
        assert_eq!(got, brute_force_collections(fan.nrays(), fan.cones()), "{:?}", fan.rays());
    }
    let pp = CoxData::new(product_of_lines()).unwrap();
    let masks: Vec<u32> = pp.collections.iter().map(|c| c.mask()).collect();
    assert_eq!(masks, vec![0b0101, 0b1010]);
}

#[test]
fn collection_vectors_are_primitive_relations() {
    for fan in fans() {
        let cox = CoxData::new(fan.clone()).unwrap();
        let rays: &Matrix = fan.rays();
        for c in &cox.collections {
            for k in 0..fan.dim() {
                let s: i64 = c.b.iter().zip(rays).map(|(b, r)| b * r[k]).sum();
                assert_eq!(s, 0);
            }
            for (i, &b) in c.b.iter().enumerate() {
                if c.members.contains(&i) {
                    assert!(b >= 1);
                } else {
                    assert!(b <= 0);
                }
            }
            assert_eq!(c.b.iter().fold(0i64, |g, &b| g.gcd(&b)), 1);
            // the functional evaluates to b on the ray degrees
            for (i, &b) in c.b.iter().enumerate() {
                let col: Vec<i64> = cox.degree_matrix.iter().map(|row| row[i]).collect();
                assert_eq!(c.deg(&Degree::from_slice(&col)), b);
            }
        }
    }
}

#[test]
fn projective_space_polytope_is_the_weighted_bound() {
    for n in 1..4 {
        let cox = CoxData::new(Fan::projective_space(n).unwrap()).unwrap();
        for i in 0..=n + 1 {
            let p = cox.betti_polytope(i);
            assert_eq!(p.facets.len(), 1);
            assert_eq!(p.facets[0].normal, vec![1]);
            assert_eq!(p.facets[0].bound, (i as i64 + 1).min(n as i64 + 1));
        }
    }
}

#[test]
fn product_truncation_generator_counts() {
    let cox = CoxData::new(product_of_lines()).unwrap();
    let ring = cox.ring(Rationals);
    let s = PresentedModule::free(&ring, vec![Degree::from_slice(&[0, 0])]).unwrap();
    for a in 0..4i64 {
        for b in 0..4i64 {
            let t = multigraded_truncate(&s, &Degree::from_slice(&[a, b])).unwrap().module;
            assert_eq!(t.num_generators() as i64, (a + 1) * (b + 1), "({a},{b})");
            assert!(t.twists().iter().all(|d| d.as_slice() == [0, 0]));
            for x in 0..4 {
                for y in 0..4 {
                    let d = Degree::from_slice(&[x, y]);
                    let full = s.hilbert_function(&Degree::from_slice(&[x + a, y + b])).unwrap();
                    assert_eq!(t.hilbert_function(&d).unwrap(), full);
                }
            }
        }
    }
    let t = multigraded_truncate(&s, &Degree::from_slice(&[0, 0])).unwrap();
    assert_eq!(t.module.num_generators(), 1);
}

#[test]
fn tor_with_quotients_in_trivial_cases() {
    let cox = CoxData::new(Fan::hirzebruch(3).unwrap()).unwrap();
    let ring = cox.ring(Rationals);
    let g = &ring.grading;
    for c in &cox.collections {
        let mut vars: Vec<usize> = c.members.iter().map(|&r| cox.variable(r)).collect();
        vars.sort();
        let s = PresentedModule::free(&ring, vec![g.zero_degree()]).unwrap();
        let tor = tor_s_quotient(&s, &vars).unwrap();
        let sj = tor.module(0).unwrap();
        assert_eq!(sj.num_generators(), 1);
        assert!(sj.relations().is_empty());
        for l in 1..3 {
            assert!(tor.module(l).unwrap().is_zero().unwrap());
        }
        let k = PresentedModule::residue_field(&ring).unwrap();
        let tor = tor_s_quotient(&k, &vars).unwrap();
        // Koszul on the variables of the collection
        let mut total = [0usize; 5];
        for (l, t) in total.iter_mut().enumerate() {
            let m = tor.module(l).unwrap();
            *t = if m.is_zero().unwrap() { 0 } else { m.num_generators() };
        }
        assert_eq!(total, [1, 2, 1, 0, 0]);
    }
}

#[test]
fn tor_bound_is_equality_without_complement() {
    let cox = CoxData::new(weighted_plane()).unwrap();
    let ring = cox.ring(Rationals);
    let vars: Vec<_> = (0..3).map(|i| ring.variable(i)).collect();
    let m = PresentedModule::ideal(&ring, &vars).unwrap();
    let c = &cox.collections[0];
    assert_eq!(c.members, vec![0, 1, 2]);
    let report = lemma_technical_check(&m, &cox, &c.members).unwrap();
    assert!(!report.rows.is_empty());
    assert!(report.rows.iter().all(|r| r.tor == r.bound));
}

#[test]
fn residue_field_tor_bound_is_equality() {
    let cox = CoxData::new(product_of_lines()).unwrap();
    let ring = cox.ring(Rationals);
    let k = PresentedModule::residue_field(&ring).unwrap();
    let betti = minimal_free_resolution(&k).unwrap().betti_table();
    for c in &cox.collections {
        let report = lemma_technical_check(&k, &cox, &c.members).unwrap();
        assert_eq!(report.rows.len(), betti.entries().count());
        assert!(report.rows.iter().all(|r| r.tor == r.bound), "{report:?}");
    }
}
