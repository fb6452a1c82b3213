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

fn exhaustive() -> CertifyOptions {
    CertifyOptions {
        early_exit: false,
        parallel: false,
    }
}

#[test]
fn del_op_basics() {
    let g = alg(Series::A, 2, 1);
    let frame = DualFrame::<Rational>::root_frame(&g);
    let zero = RhoCandidate::zero(2);
    assert!(del_op(&g, &frame, &zero, frame.x(0), frame.x(1)).unwrap().is_zero());
    let p = RhoCandidate::rank_one(2, 1, 0);
    assert!(del_op(&g, &frame, &p, frame.x(0), frame.x(0)).unwrap().is_zero());
    assert!(matches!(
        del_op(&g, &frame, &p, frame.z(0), frame.x(0)),
        Err(Error::Grade(_))
    ));

    // B(∂P(X,Y), E) = B(P(X), Y) - B(P(Y), X)
    let e = g.grading_element::<Rational>();
    let d = del_op(&g, &frame, &p, frame.x(0), frame.x(1)).unwrap();
    let lhs = g.killing(&d, &e);
    let px = p.apply(&g, &frame, frame.x(0));
    let py = p.apply(&g, &frame, frame.x(1));
    let rhs = g.killing(&px, frame.x(1)) - g.killing(&py, frame.x(0));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, r(1));
}

#[test]
fn rho_candidates() {
    let s = RhoCandidate::<Rational>::sym_pair(3, 0, 2);
    assert!(s.is_symmetric());
    assert!(!RhoCandidate::<Rational>::rank_one(3, 0, 2).is_symmetric());
    let g = alg(Series::A, 3, 1);
    let frame = DualFrame::<Rational>::root_frame(&g);
    // Z_1 Z_3 sends X_3 to Z_1 / 2
    assert_eq!(s.image_of_basis(&frame, 2), frame.z(0).scaled(&Rational::from_ratio(1, 2)));
    assert_eq!(s.apply(&g, &frame, frame.x(1)), LieVec::zero());
}

#[test]
fn lemma1_small_algebras() {
    let a2 = alg(Series::A, 2, 1);
    let sym = lemma1_certify::<Rational>(&a2, true, CertifyOptions::default()).certificate;
    assert_eq!((sym.achieved_dim, sym.target_dim), (3, 3));
    assert!(sym.pass);
    let full = lemma1_certify::<Rational>(&a2, false, CertifyOptions::default()).certificate;
    assert_eq!((full.achieved_dim, full.target_dim), (4, 4));
    assert!(full.pass);
    assert_eq!(full.witnesses.len(), 4);

    let c3 = alg(Series::C, 3, 3);
    let sym = lemma1_certify::<Rational>(&c3, true, CertifyOptions::default()).certificate;
    // g_0 = gl(3), so g_0^ss = sl(3)
    assert_eq!(c3.dim_of_grade(0), 9);
    assert_eq!(sym.achieved_dim, 8);
    assert!(sym.pass);
}

#[test]
fn brute_force_matches_early_exit() {
    let a2 = alg(Series::A, 2, 1);
    for symmetric in [true, false] {
        let fast = lemma1_certify::<Rational>(&a2, symmetric, CertifyOptions::default());
        let slow = lemma1_certify::<Rational>(&a2, symmetric, exhaustive());
        assert_eq!(fast.span, slow.span);
        assert!(slow.certificate.generators_consumed >= fast.certificate.generators_consumed);
        let fast = theorem_certify::<Rational>(&a2, symmetric, CertifyOptions::default());
        let slow = theorem_certify::<Rational>(&a2, symmetric, exhaustive());
        assert_eq!(fast.span, slow.span);
    }
}

#[test]
fn parallel_path_agrees() {
    let g = alg(Series::D, 5, 5);
    let opts = CertifyOptions {
        early_exit: true,
        parallel: true,
    };
    let par = lemma1_certify::<Rational>(&g, true, opts);
    let seq = lemma1_certify::<Rational>(&g, true, CertifyOptions::default());
    assert_eq!(par.span, seq.span);
    assert!(par.certificate.pass);
    let again = lemma1_certify::<Rational>(&g, true, opts);
    assert_eq!(par.certificate.witnesses, again.certificate.witnesses);
}

#[test]
fn center_witness() {
    for (s, n, node) in [(Series::A, 2, 1), (Series::B, 3, 1), (Series::C, 3, 3), (Series::D, 4, 4), (Series::E6, 6, 1)] {
        let g = alg(s, n, node);
        let w = lemma1_center_witness::<Rational>(&g).unwrap();
        assert!(w.pass(), "{s}{n} node {node}");
        assert_eq!(w.value, r(1));

        let frame = DualFrame::<Rational>::root_frame(&g);
        let scaled = w.rho.scaled(&r(-7));
        assert_eq!(center_component(&g, &frame, &scaled, 0, 1), r(-7));

        let sym = RhoCandidate::sym_pair(frame.n(), 0, 1);
        assert_eq!(center_component(&g, &frame, &sym, 0, 1), r(0));
    }
}

#[test]
fn ideal_witness_betas() {
    let g = alg(Series::A, 2, 1);
    let ideals = g.simple_ideals::<Rational>();
    let w = lemma1_ideal_witness(&g, &ideals[0]).unwrap();
    assert_eq!(w.beta, 2);
    assert!(w.pass());

    let g = alg(Series::A, 3, 2);
    let betas: Vec<usize> = g
        .simple_ideals::<Rational>()
        .iter()
        .map(|i| {
            let w = lemma1_ideal_witness(&g, i).unwrap();
            assert!(w.pass());
            assert_eq!(w.center, r(0));
            w.beta
        })
        .collect();
    assert_eq!(betas, vec![1, 3]);

    let g = alg(Series::D, 5, 1);
    for ideal in g.simple_ideals::<Rational>() {
        assert!(lemma1_ideal_witness(&g, &ideal).unwrap().pass());
    }
}

#[test]
fn lemma2_small_ranks() {
    let sym = lemma2_certify::<Rational>(2, true, Lemma2Options::default()).unwrap();
    assert_eq!(sym.certificate.achieved_dim, 3);
    assert!(sym.pass());
    let mixed = lemma2_certify::<Rational>(2, false, Lemma2Options::default()).unwrap();
    assert_eq!(mixed.certificate.achieved_dim, 4);
    assert!(mixed.pass());
    assert!(lemma2_certify::<Rational>(1, true, Lemma2Options::default()).is_err());

    let sym = lemma2_certify::<Rational>(5, true, Lemma2Options::default()).unwrap();
    assert!(sym.spot_checks.iter().any(|c| c.preimage == "e1^3 e2" && c.expected == "l1 l2" && c.ok));
    assert!(sym.spot_checks.iter().any(|c| c.preimage == "e4^4" && c.expected == "l5^2" && c.ok));
}

#[test]
fn lemma2_without_diagonal() {
    let opts = Lemma2Options {
        off_diagonal_only: true,
        ..Lemma2Options::default()
    };
    // n = 2: the diagonal lambda_i (x) lambda_i only appear as one sum
    let two = lemma2_certify::<Rational>(2, false, opts).unwrap();
    assert_eq!(two.certificate.achieved_dim, 3);
    assert!(!two.pass());
    for n in 3..=5 {
        assert!(lemma2_certify::<Rational>(n, false, opts).unwrap().pass());
    }
}

#[test]
fn lemma2_rank_ignores_normalization() {
    for n in 2..=4 {
        for symmetric in [true, false] {
            let avg = lemma2_certify::<Rational>(n, symmetric, Lemma2Options::default()).unwrap();
            let der = lemma2_certify::<Rational>(
                n,
                symmetric,
                Lemma2Options {
                    normalization: Normalization::Derivative,
                    ..Lemma2Options::default()
                },
            )
            .unwrap();
            assert_eq!(avg.certificate.achieved_dim, der.certificate.achieved_dim);
            assert_eq!(avg.certificate.witnesses, der.certificate.witnesses);
        }
    }
}

#[test]
fn theorem_small_algebras() {
    let a2 = alg(Series::A, 2, 1);
    let exact = theorem_certify::<Rational>(&a2, true, CertifyOptions::default());
    assert_eq!(exact.certificate.achieved_dim, 3);
    assert!(exact.certificate.pass);
    let general = theorem_certify::<Rational>(&a2, false, CertifyOptions::default());
    assert_eq!(general.certificate.achieved_dim, 4);
    assert!(general.certificate.pass);

    let d4 = alg(Series::D, 4, 1);
    let general = theorem_certify::<Rational>(&d4, false, CertifyOptions::default()).certificate;
    assert_eq!(general.achieved_dim, 16);
    assert!(general.pass);
}

#[test]
fn theorem_image_factors_through_lemma1() {
    for (s, n, node) in [(Series::A, 2, 1), (Series::A, 3, 2), (Series::C, 3, 3)] {
        let g = alg(s, n, node);
        let thm = theorem_certify::<Rational>(&g, true, exhaustive());
        let l1 = lemma1_certify::<Rational>(&g, true, exhaustive());
        assert!(l1.span.contains_subspace(&thm.span));
        for w in sym_basis(4, g.dim_of_grade(-1)).iter().take(20) {
            assert!(theorem_rho::<Rational>(g.dim_of_grade(-1), true, w).is_symmetric());
        }
    }
}

#[test]
fn float_scalars_run() {
    let a2 = alg(Series::A, 2, 1);
    let c = lemma1_certify::<f64>(&a2, false, CertifyOptions::default()).certificate;
    assert_eq!(c.achieved_dim, 4);
    assert!(!c.exact);
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..5, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn del_op_antisymmetric(m in matrix_strategy(4), k in 0usize..4, l in 0usize..4) {
        let g = alg(Series::A, 3, 2);
        let frame = DualFrame::<Rational>::root_frame(&g);
        let p = RhoCandidate::from_matrix(m.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect());
        let kl = del_op_basis(&g, &frame, &p, k, l);
        let lk = del_op_basis(&g, &frame, &p, l, k);
        prop_assert_eq!(kl.clone(), lk.negated());
        prop_assert!(g.is_in_grade(&kl, 0));
    }

    #[test]
    fn symmetric_image_orthogonal_to_center(m in matrix_strategy(4), k in 0usize..4, l in 0usize..4) {
        let g = alg(Series::A, 3, 2);
        let frame = DualFrame::<Rational>::root_frame(&g);
        let mut sym = m.clone();
        for a in 0..4 {
            for b in 0..a {
                sym[a][b] = m[b][a];
            }
        }
        let p = RhoCandidate::from_matrix(sym.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect());
        prop_assert!(p.is_symmetric());
        prop_assert_eq!(center_component(&g, &frame, &p, k, l), r(0));
        let ss = g.semisimple_part::<Rational>();
        prop_assert!(ss.contains(&del_op_basis(&g, &frame, &p, k, l)));
    }
}
