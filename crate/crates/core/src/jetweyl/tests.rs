use super::*;
use crate::rootsystem::{build_root_system, Series, SeriesLabel};
use crate::scalar::Rational;
use proptest::prelude::*;

fn alg(series: Series, rank: usize, node: usize) -> GradedLieAlgebra {
    let rs = build_root_system(SeriesLabel::new(series, rank).unwrap()).unwrap();
    crate::gradedlie::build_algebra(&rs, node).unwrap()
}

fn r(v: i64) -> Rational {
    Rational::from_i64(v)
}

fn zero_upsilon(c: &ModelChart<Rational>) -> JetPoly<Rational> {
    JetPoly::zero(c.n(), c.order(), vec![Slot::Plus])
}

#[test]
fn rejects_short_orders() {
    let g = alg(Series::A, 2, 1);
    assert!(matches!(
        ModelChart::<Rational>::new(&g, 1),
        Err(Error::InvalidOrder { min: 2, found: 1 })
    ));
    assert!(matches!(
        holonomy_span_jets::<Rational>(&g, false, 5, CertifyOptions::default()),
        Err(Error::InvalidOrder { min: 6, found: 5 })
    ));
}

#[test]
fn derivative_of_monomial_section() {
    let g = alg(Series::A, 2, 1);
    let c = ModelChart::<Rational>::new(&g, 4).unwrap();
    let x2 = JetPoly::scalar_monomial(2, 4, MultiIndex::new(vec![0, 0]), r(1));
    let s = c.coordinate_field(1).times(&x2).unwrap();
    let ds = c.flat_nabla(&s, 0).unwrap();
    let expected = c.coordinate_field(1).times(&JetPoly::scalar_monomial(2, 4, MultiIndex::new(vec![0]), r(2))).unwrap();
    assert_eq!(ds, expected.truncated(3));
    assert!(c.flat_nabla(&s, 1).unwrap().is_zero());
}

#[test]
fn zero_upsilon_is_flat() {
    let g = alg(Series::A, 2, 1);
    let c = ModelChart::<Rational>::new(&g, 4).unwrap();
    let u = zero_upsilon(&c);
    let f = (0..2).map(|a| c.coordinate_field(a)).collect::<Vec<_>>();
    let s = c.random_upsilon(1, 0, 3).unwrap();
    assert_eq!(c.hat_nabla(&u, &s, &f[0]).unwrap(), c.flat_nabla(&s, 0).unwrap());
    assert!(c.hat_rho(&u, None).unwrap().is_zero());
    assert!(c.hat_curvature_direct(&u, &f[0], &f[1], &f[1]).unwrap().is_zero());
    assert!(c.curvature_tensor(&u).unwrap().is_zero());
}

#[test]
fn baseline_rho_passes_through() {
    let g = alg(Series::A, 3, 2);
    let c = ModelChart::<Rational>::new(&g, 3).unwrap();
    let u = zero_upsilon(&c);
    let frame = c.frame().clone();
    // P = Z_1 (x) Z_2: P(X_1) = Z_2 up to the pairing B(Z_1, X_1) = 1
    let p = c.constant(Slot::Plus, frame.z(1)).prepend(Slot::Plus, frame.z(0));
    let got = c.hat_rho_at(&u, &c.coordinate_field(0), Some(&p)).unwrap();
    assert_eq!(got, c.constant(Slot::Plus, frame.z(1)).truncated(got.order()));
    assert!(c.hat_rho_at(&u, &c.coordinate_field(1), Some(&p)).unwrap().is_zero());
}

#[test]
fn constant_upsilon_rho_is_quadratic() {
    let g = alg(Series::C, 3, 3);
    let c = ModelChart::<Rational>::new(&g, 2).unwrap();
    let frame = c.frame().clone();
    let v = frame.z(0).plus(&frame.z(2).scaled(&r(3)));
    let u = c.constant(Slot::Plus, &v);
    for a in 0..c.n() {
        let xa = frame.x(a);
        let expected = g.bracket(&v, &g.bracket(&v, xa)).scaled(&Rational::from_ratio(-1, 2));
        let got = c.hat_rho_at(&u, &c.coordinate_field(a), None).unwrap();
        assert_eq!(got, c.constant(Slot::Plus, &expected).truncated(got.order()));
    }
}

#[test]
fn curvature_identity_random_upsilon() {
    let g = alg(Series::A, 2, 1);
    for (order, seed) in [(6, 0), (7, 1), (6, 2)] {
        let c = ModelChart::<Rational>::new(&g, order).unwrap();
        let u = c.random_upsilon(seed, 0, 3).unwrap();
        let check = c.check_curvature_identity(&u).unwrap();
        assert!(check.pass(), "seed {seed}: {:?}", check.mismatches.first());
        assert!(check.compared_order >= order - 2);
    }
}

#[test]
fn curvature_identity_on_larger_fiber() {
    let g = alg(Series::A, 3, 2);
    let c = ModelChart::<Rational>::new(&g, 3).unwrap();
    let u = c.random_upsilon(9, 0, 2).unwrap();
    assert!(c.check_curvature_identity(&u).unwrap().pass());
}

#[test]
fn corrupted_bracket_breaks_identity() {
    let g = alg(Series::A, 2, 1);
    let frame = DualFrame::<Rational>::root_frame(&g);
    // shift [h_1, e_-gamma] by e_-gamma
    let xi = frame.x(0).leading().unwrap();
    let bad = g.with_corrupted_constant(0, xi, xi, 1);
    let c = ModelChart::<Rational>::with_frame(&bad, frame, 6).unwrap();
    let u = c.random_upsilon(0, 0, 3).unwrap();
    let check = c.check_curvature_identity(&u).unwrap();
    assert!(!check.pass());
    let m = &check.mismatches[0];
    assert_ne!(m.direct, m.via_rho);
}

#[test]
fn torsion_free() {
    let g = alg(Series::B, 3, 1);
    let c = ModelChart::<Rational>::new(&g, 4).unwrap();
    let u = c.random_upsilon(3, 0, 3).unwrap();
    let xi = c.random_vector_field(4);
    let eta = c.random_vector_field(5);
    assert!(c.torsion(&u, &xi, &eta).unwrap().is_zero());
}

#[test]
fn jet_identities_hold() {
    let g = alg(Series::A, 2, 1);
    for k in 2..=4 {
        let c = ModelChart::<Rational>::new(&g, k + 2).unwrap();
        for seed in 0..2 {
            let u = c.random_upsilon(seed, k + 1, k + 2).unwrap();
            let id = c.jet_identities(&u, k).unwrap();
            assert!(id.pass(), "k = {k}, seed = {seed}: {id:?}");
        }
    }
}

#[test]
fn jet_identity_detects_low_order_upsilon() {
    let g = alg(Series::A, 2, 1);
    let c = ModelChart::<Rational>::new(&g, 5).unwrap();
    let u = c.random_upsilon(4, 1, 3).unwrap();
    let id = c.jet_identities(&u, 3).unwrap();
    assert!(!id.rho_jet_vanishes);
    assert!(!id.pass());
}

#[test]
fn lemma2_upsilons() {
    let g = alg(Series::A, 3, 2);
    let c = ModelChart::<Rational>::new(&g, 6).unwrap();
    let general = c.lemma2_upsilon_general().unwrap();
    let exact = c.lemma2_upsilon_exact().unwrap();
    assert_eq!(general.min_degree(), Some(5));
    assert_eq!(exact.min_degree(), Some(5));
    // d(df) = 0: mixed partials of the coefficients agree
    let comps: Vec<_> = (0..c.n())
        .map(|b| exact.pair_slot(&g, 0, c.frame().x(b)))
        .collect();
    for a in 0..c.n() {
        for b in 0..c.n() {
            assert_eq!(comps[a].derivative(b).unwrap(), comps[b].derivative(a).unwrap());
        }
    }
}

#[test]
fn jet_span_small_algebras() {
    let a2 = alg(Series::A, 2, 1);
    let general = holonomy_span_jets::<Rational>(&a2, false, 6, CertifyOptions::default()).unwrap();
    assert_eq!(general.certificate.achieved_dim, 4);
    assert_eq!(general.certificate.cross_check, Some(4));
    assert!(general.certificate.pass);
    let exact = holonomy_span_jets::<Rational>(&a2, true, 6, CertifyOptions::default()).unwrap();
    assert_eq!(exact.certificate.achieved_dim, 3);
    assert!(exact.certificate.pass);

    let c3 = alg(Series::C, 3, 3);
    let exact = holonomy_span_jets::<Rational>(&c3, true, 6, CertifyOptions::default()).unwrap();
    assert_eq!(exact.certificate.achieved_dim, 8);
    assert!(exact.certificate.pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn torsion_vanishes_for_random_data(seed in 0u64..1000, s1 in 0u64..1000, s2 in 0u64..1000) {
        let g = alg(Series::A, 3, 1);
        let c = ModelChart::<Rational>::new(&g, 3).unwrap();
        let u = c.random_upsilon(seed, 0, 3).unwrap();
        let xi = c.random_vector_field(s1);
        let eta = c.random_vector_field(s2);
        prop_assert!(c.torsion(&u, &xi, &eta).unwrap().is_zero());
    }

    #[test]
    fn hat_nabla_is_affine_in_upsilon(s1 in 0u64..1000, s2 in 0u64..1000, s3 in 0u64..1000) {
        let g = alg(Series::A, 2, 1);
        let c = ModelChart::<Rational>::new(&g, 4).unwrap();
        let u1 = c.random_upsilon(s1, 0, 3).unwrap();
        let u2 = c.random_upsilon(s2, 0, 3).unwrap();
        let t = c.random_upsilon(s3, 0, 4).unwrap();
        let xi = c.coordinate_field(0);
        let sum = c.hat_nabla(&u1.plus(&u2).unwrap(), &t, &xi).unwrap();
        let lhs = sum.plus(&c.flat_directional(&t, &xi).unwrap()).unwrap();
        let rhs = c.hat_nabla(&u1, &t, &xi).unwrap().plus(&c.hat_nabla(&u2, &t, &xi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
