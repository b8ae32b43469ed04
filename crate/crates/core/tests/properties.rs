//! Property tests over random complexes and randomly grown balls and spheres.

use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sx_core::certificate::boundary_transport;
use sx_core::certify::{
    certify_k_shelled, certify_k_stacked_sphere, certify_k_stellated, is_k_stacked_ball, SearchBudget,
};
use sx_core::constructions::{
    is_automorphism, klee_novik_bar, klee_novik_bar_facet_count, klee_novik_map, murai_nevo_bar_sphere, subset_closure,
    KleeNovikMap,
};
use sx_core::homology::{betti, screen_homology_ball, screen_homology_sphere, CoefficientField};
use sx_core::moves::{apply_bistellar, apply_shelling, bistellar_options, standard_ball, standard_sphere};
use sx_core::random::{random_k_shelled_ball, random_k_stellated_sphere, random_stacked_sphere};
use sx_core::symmetry::automorphism_group;
use sx_core::{Complex, Label};

fn arb_complex() -> impl Strategy<Value = Complex> {
    prop::collection::vec(1u8..=127, 1..6).prop_map(|masks| {
        let facets: Vec<Vec<i64>> =
            masks.iter().map(|m| (0..7).filter(|i| m & (1 << i) != 0).map(|i| i as i64 + 1).collect()).collect();
        Complex::from_facets(facets).unwrap()
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fields() -> Vec<CoefficientField> {
    [0, 2, 3].iter().map(|&p| CoefficientField::new(p).unwrap()).collect()
}

fn padded(v: Vec<u64>, n: usize) -> Vec<u64> {
    let mut v = v;
    v.resize(n, 0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_antistar_recount(x in arb_complex()) {
        for v in x.vertices() {
            let anti = x.antistar(&v).unwrap().f_vector().extended();
            let link = x.link(&sx_core::Face::new([v.clone()])).unwrap().f_vector().extended();
            let total = x.f_vector().extended();
            let n = total.len();
            let anti = padded(anti, n);
            let shifted = padded(std::iter::once(0).chain(link).collect(), n);
            let sum: Vec<u64> = (0..n).map(|i| anti[i] + shifted[i]).collect();
            prop_assert_eq!(sum, total);
        }
    }

    #[test]
    fn join_convolves_f_vectors(x in arb_complex(), y in arb_complex()) {
        let rename: HashMap<Label, Label> = y.labels().iter().map(|l| (l.clone(), Label::name(&format!("{l}y")))).collect();
        let y = y.relabel(&rename).unwrap();
        let a = x.f_vector().extended();
        let b = y.f_vector().extended();
        let mut conv = vec![0u64; a.len() + b.len() - 1];
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                conv[i + j] += p * q;
            }
        }
        prop_assert_eq!(x.join(&y).unwrap().f_vector().extended(), conv);
    }

    #[test]
    fn classification_is_monotone(x in arb_complex()) {
        let c = x.classify();
        prop_assert!(!c.normal_pseudomanifold || c.pseudomanifold);
        prop_assert!(!c.pseudomanifold || c.weak_pseudomanifold);
    }

    #[test]
    fn euler_poincare(x in arb_complex()) {
        for f in fields() {
            let b = betti(&x, f);
            let alt: i64 = b.reduced_betti.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
            prop_assert_eq!(1 + alt, x.euler_characteristic());
        }
    }

    #[test]
    fn boundary_of_a_closed_complex_is_empty(d in 1i64..5) {
        let s = standard_sphere(d, None).unwrap();
        prop_assert!(s.boundary().unwrap().is_void());
        prop_assert_eq!(standard_ball(d, None).unwrap().boundary().unwrap(), standard_sphere(d - 1, None).unwrap());
    }

    #[test]
    fn bistellar_reversibility_and_vertex_counts(seed in any::<u64>(), d in 1usize..=4, steps in 0usize..6) {
        let mut r = rng(seed);
        let (s, _) = random_k_stellated_sphere(d, d + 1, steps, &mut r).unwrap();
        for m in bistellar_options(&s, 0, d as i64) {
            let t = apply_bistellar(&s, &m).unwrap();
            prop_assert_eq!(&apply_bistellar(&t, &m.reverse()).unwrap(), &s);
            let delta = t.vertex_count() as i64 - s.vertex_count() as i64;
            let want = match m.index() {
                0 => 1,
                i if i == d as i64 => -1,
                _ => 0,
            };
            prop_assert_eq!(delta, want);
        }
    }

    #[test]
    fn shelling_monotonicity_and_commutation(seed in any::<u64>(), d in 1usize..=4, steps in 1usize..8) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=d);
        let (_, cert) = random_k_shelled_ball(d, k, steps, &mut r).unwrap();
        let mut y = cert.start.resolve().unwrap();
        for m in &cert.moves {
            let next = apply_shelling(&y, m).unwrap();
            prop_assert_eq!(next.facet_count(), y.facet_count() + 1);
            prop_assert_eq!(next.vertex_count() == y.vertex_count() + 1, m.index() == 0);
            prop_assert_eq!(next.boundary().unwrap(), apply_bistellar(&y.boundary().unwrap(), m).unwrap());
            y = next;
        }
    }

    #[test]
    fn shelled_balls_transport_to_stellated_boundaries(seed in any::<u64>(), d in 2usize..=4, steps in 0usize..6) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=2.min(d));
        let (b, cert) = random_k_shelled_ball(d, k, steps, &mut r).unwrap();
        let budget = SearchBudget::default();
        prop_assert!(certify_k_shelled(&b, k as i64, &budget).is_proved());
        prop_assert!(is_k_stacked_ball(&b, k as i64).unwrap().is_proved());
        // monotone in k
        prop_assert!(certify_k_shelled(&b, k as i64 + 1, &budget).is_proved());
        let bd = boundary_transport(&cert).unwrap();
        prop_assert_eq!(bd.replay().unwrap().result, b.boundary().unwrap());
        prop_assert!(bd.max_index().unwrap_or(-1) < k as i64);
        // a homology ball screen passing implies a sphere screen on its boundary
        if screen_homology_ball(&b, &fields()).pass {
            prop_assert!(screen_homology_sphere(&b.boundary().unwrap(), &fields()).pass);
        }
    }

    #[test]
    fn closure_is_idempotent_and_keeps_the_skeleton(seed in any::<u64>(), d in 2usize..=4, steps in 0usize..6) {
        let mut r = rng(seed);
        let s = random_stacked_sphere(d, steps, &mut r).unwrap();
        for m in 1..=d {
            let once = subset_closure(&s, m);
            prop_assert_eq!(subset_closure(&once, m), once);
        }
        let bar = murai_nevo_bar_sphere(&s, 1);
        prop_assert!(bar.same_skeleton(&s, 1));
        prop_assert!(certify_k_stacked_sphere(&s, 1).is_proved());
    }

    #[test]
    fn vertex_links_of_stellated_spheres(seed in any::<u64>(), steps in 0usize..6) {
        let mut r = rng(seed);
        let (s, _) = random_k_stellated_sphere(3, 1, steps, &mut r).unwrap();
        let budget = SearchBudget::default();
        for v in s.vertices() {
            let link = s.link(&sx_core::Face::new([v])).unwrap();
            prop_assert!(certify_k_stellated(&link, 1, &budget).is_proved());
        }
    }

    #[test]
    fn automorphism_generators_preserve_facets(x in arb_complex()) {
        let g = automorphism_group(&x, 16).unwrap();
        for gen in &g.generators {
            let map: HashMap<Label, Label> = gen.iter().cloned().collect();
            prop_assert!(is_automorphism(&x, &map));
        }
        if g.is_vertex_transitive() {
            prop_assert_eq!(&g.order % BigUint::from(x.vertex_count()), BigUint::from(0u32));
        }
    }
}

#[test]
fn join_of_spheres_is_a_sphere() {
    for a in 0..=2 {
        for b in 0..=2 {
            let x = standard_sphere(a, None).unwrap();
            let names: Vec<Label> = (0..b + 2).map(|i| Label::name(&format!("y{i}"))).collect();
            let y = standard_sphere(b, Some(&names)).unwrap();
            let j = x.join(&y).unwrap();
            for f in fields() {
                assert_eq!(betti(&j, f).reduced_betti, betti(&standard_sphere(a + b + 1, None).unwrap(), f).reduced_betti);
            }
        }
    }
}

#[test]
fn klee_novik_bar_counts_and_symmetries() {
    for d in 0..=8 {
        for k in 0..=d {
            let bar = klee_novik_bar(k, d).unwrap();
            assert_eq!(bar.facet_count() as u64, klee_novik_bar_facet_count(k, d), "({k},{d})");
            if d <= 5 {
                for w in [KleeNovikMap::D, KleeNovikMap::E, KleeNovikMap::R] {
                    assert!(is_automorphism(&bar, &klee_novik_map(w, k, d)), "({k},{d}) {w:?}");
                }
            }
        }
    }
}

#[test]
fn fixture_spheres_are_field_independent() {
    for name in ["dfm_s3_16", "bl_sigma3_16", "ziegler_s2_10", "lutz_s2_8"] {
        let s = sx_core::corpus::complex(name).unwrap();
        let base = betti(&s, CoefficientField::Rational).reduced_betti;
        for p in [2, 3, 5] {
            assert_eq!(betti(&s, CoefficientField::Prime(p)).reduced_betti, base, "{name} over {p}");
        }
        assert_eq!(s.euler_characteristic(), 1 + base.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i64 } else { -(v as i64) }).sum::<i64>());
    }
}
