use super::*;
use crate::rootsystem::{build_root_system, Series, SeriesLabel};
use crate::scalar::{q, Rational};
use num_traits::Zero;

fn alg(series: Series, rank: usize, node: usize) -> GradedLieAlgebra {
    let rs = build_root_system(SeriesLabel::new(series, rank).unwrap()).unwrap();
    build_algebra(&rs, node).unwrap()
}

fn r(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[test]
fn a2_dims() {
    let g = alg(Series::A, 2, 1);
    assert_eq!(g.dim(), 8);
    assert_eq!(g.dim_of_grade(-1), 2);
    assert_eq!(g.dim_of_grade(0), 4);
    assert_eq!(g.dim_of_grade(1), 2);
}

#[test]
fn table_dims() {
    assert_eq!(alg(Series::C, 3, 3).dim_of_grade(-1), 6);
    assert_eq!(alg(Series::D, 4, 4).dim_of_grade(-1), 6);
    assert_eq!(alg(Series::E7, 7, 7).dim_of_grade(-1), 27);
}

#[test]
fn invalid_node_rejected() {
    let rs = build_root_system(SeriesLabel::new(Series::C, 3).unwrap()).unwrap();
    assert!(matches!(build_algebra(&rs, 1), Err(Error::InvalidNode { .. })));
    let g2 = build_root_system(SeriesLabel::exceptional(Series::G2).unwrap()).unwrap();
    assert!(matches!(build_algebra(&g2, 1), Err(Error::NoOneGrading(Series::G2))));
}

#[test]
fn bracket_basics() {
    let g = alg(Series::A, 3, 2);
    let x = LieVec::<Rational>::unit(g.indices_of_grade(-1)[0]);
    assert!(g.bracket(&x, &x).is_zero());
    for &i in g.indices_of_grade(-1) {
        for &j in g.indices_of_grade(-1) {
            assert!(g.bracket(&LieVec::<Rational>::unit(i), &LieVec::unit(j)).is_zero());
        }
    }
    let e = g.grading_element::<Rational>();
    for &i in g.indices_of_grade(-1) {
        let xi = LieVec::unit(i);
        assert_eq!(g.bracket(&e, &xi), xi.negated());
    }
    for &i in g.indices_of_grade(1) {
        let zi = LieVec::unit(i);
        assert_eq!(g.bracket(&e, &zi), zi);
    }
}

#[test]
fn grading_element_a2_is_fundamental_coweight() {
    let g = alg(Series::A, 2, 1);
    let e = g.grading_element::<Rational>();
    assert_eq!(e, LieVec::from_pairs([(0, q(2, 3)), (1, q(1, 3))]));
    for &i in g.indices_of_grade(0) {
        assert!(g.bracket(&e, &LieVec::unit(i)).is_zero());
    }
}

#[test]
fn killing_values() {
    let g = alg(Series::A, 2, 1);
    let e = g.grading_element::<Rational>();
    assert_eq!(g.killing(&e, &e), r(2 * 2));
    let plus = g.indices_of_grade(1);
    for &i in plus {
        for &j in plus {
            assert_eq!(g.killing_basis(i, j), 0);
        }
    }
    // sl(3): B(e_a, f_a) = 2 (n + 1) = 6 for every root
    let e1 = g.root_vector(0);
    let f1 = g.root_vector(g.root_system().num_positive());
    assert_eq!(g.killing_basis(e1, f1), 6);
}

#[test]
fn semisimple_part_dims() {
    let g = alg(Series::A, 2, 1);
    assert_eq!(g.semisimple_part::<Rational>().dim(), 3);
    let e6 = alg(Series::E6, 6, 1);
    assert_eq!(e6.semisimple_part::<Rational>().dim(), 45);
}

#[test]
fn reductive_decomposition() {
    for (s, n, node) in [(Series::A, 2, 1), (Series::B, 3, 1), (Series::D, 4, 4)] {
        let g = alg(s, n, node);
        let ss = g.semisimple_part::<Rational>();
        let e = g.grading_element::<Rational>();
        for row in ss.rows() {
            assert!(g.killing(&e, row).is_zero());
        }
        let mut all = ss.clone();
        all.insert(&e);
        assert_eq!(all, g.zero_part());
    }
}

#[test]
fn simple_ideals_split_at_crossed_node() {
    let g = alg(Series::A, 3, 2);
    let ideals = g.simple_ideals::<Rational>();
    assert_eq!(ideals.len(), 2);
    assert!(ideals.iter().all(|i| i.subspace.dim() == 3));
    assert_eq!(ideals[0].nodes, vec![1]);
    assert_eq!(ideals[1].nodes, vec![3]);

    let g = alg(Series::A, 2, 1);
    let ideals = g.simple_ideals::<Rational>();
    assert_eq!(ideals.len(), 1);
    assert_eq!(ideals[0].subspace.dim(), 3);

    for (s, n, node) in [(Series::D, 5, 1), (Series::E6, 6, 1), (Series::C, 4, 4)] {
        let g = alg(s, n, node);
        let ss = g.semisimple_part::<Rational>();
        let ideals = g.simple_ideals::<Rational>();
        let total: usize = ideals.iter().map(|i| i.subspace.dim()).sum();
        assert_eq!(total, g.dim_of_grade(0) - 1);
        for i in &ideals {
            assert!(ss.contains_subspace(&i.subspace));
        }
    }
}

#[test]
fn dual_basis() {
    let g = alg(Series::A, 2, 1);
    let frame = DualFrame::<Rational>::root_frame(&g);
    for a in 0..frame.n() {
        for b in 0..frame.n() {
            let want = if a == b { r(1) } else { r(0) };
            assert_eq!(g.killing(frame.z(a), frame.x(b)), want);
        }
        // Z is the opposite root vector scaled by 1 / B(e, f) = 1/6
        let f = frame.x(a).leading().unwrap();
        let e = f - g.root_system().num_positive();
        assert_eq!(frame.z(a), &LieVec::basis(e, q(1, 6)));
    }

    let mut xs: Vec<LieVec<Rational>> = frame.xs().to_vec();
    xs.reverse();
    let zs = g.dual_basis_g1(&xs).unwrap();
    let mut expected = frame.zs().to_vec();
    expected.reverse();
    assert_eq!(zs, expected);

    assert!(matches!(g.dual_basis_g1::<Rational>(&xs[..1]), Err(Error::DimensionMismatch { .. })));
    assert!(matches!(g.dual_basis_g1(&[frame.z(0).clone(), frame.z(1).clone()]), Err(Error::Grade(_))));
}

#[test]
fn act_bullet_rules() {
    let g = alg(Series::C, 3, 3);
    let e = g.grading_element::<Rational>();
    for &i in g.indices_of_grade(1) {
        let v = LieVec::unit(i);
        assert_eq!(g.act_bullet(&e, &v).unwrap(), v);
    }
    let ss = g.semisimple_part::<Rational>();
    for a in ss.rows() {
        for &i in g.indices_of_grade(-1) {
            let out = g.act_bullet(a, &LieVec::unit(i)).unwrap();
            assert!(g.is_in_grade(&out, -1));
        }
    }
    let x = LieVec::<Rational>::unit(g.indices_of_grade(-1)[0]);
    assert!(matches!(g.act_bullet(&x, &x), Err(Error::Grade(_))));
}

#[test]
fn irreducible_components() {
    for (s, n, node) in [(Series::A, 3, 2), (Series::C, 3, 3), (Series::D, 5, 5)] {
        let g = alg(s, n, node);
        for grade in [-1i8, 1] {
            for &i in g.indices_of_grade(grade) {
                let span = g.g0_orbit_span(&LieVec::<Rational>::unit(i));
                assert_eq!(span.dim(), g.dim_of_grade(grade));
            }
        }
    }
}
