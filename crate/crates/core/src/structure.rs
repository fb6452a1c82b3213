//! Structural self-checks of a graded algebra, all in exact integer or
//! rational arithmetic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gradedlie::{GradedLieAlgebra, LieVec};
use crate::linalg::rank;
use crate::scalar::{Rational, Scalar};

type Acc = std::collections::BTreeMap<usize, i128>;

/// Above this dimension identities over triples are sampled.
pub const EXHAUSTIVE_DIM: usize = 60;

/// Number of sampled triples for larger algebras.
pub const SAMPLED_TRIPLES: usize = 100_000;

/// Seed of the triple sampler.
pub const TRIPLE_SEED: u64 = 0x5eed;

/// Outcome of one identity over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, as basis names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub g: usize,
    pub g_minus: usize,
    pub g0: usize,
    pub g0_ss: usize,
    pub ideals: Vec<usize>,
}

impl Dims {
    pub fn of(alg: &GradedLieAlgebra) -> Self {
        Self {
            g: alg.dim(),
            g_minus: alg.dim_of_grade(-1),
            g0: alg.dim_of_grade(0),
            g0_ss: alg.semisimple_part::<Rational>().dim(),
            ideals: alg.simple_ideals::<Rational>().iter().map(|i| i.subspace.dim()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub dims: Dims,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

struct Tally {
    outcome: CheckOutcome,
}

impl Tally {
    fn new(name: &str) -> Self {
        Self {
            outcome: CheckOutcome {
                name: name.to_string(),
                cases: 0,
                failures: 0,
                first_failure: None,
            },
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.outcome.cases += 1;
        if !ok {
            self.outcome.failures += 1;
            if self.outcome.first_failure.is_none() {
                self.outcome.first_failure = Some(describe());
            }
        }
    }
}

/// Basis triples over which Jacobi and invariance are tested: all of them up
/// to [`EXHAUSTIVE_DIM`], otherwise [`SAMPLED_TRIPLES`] drawn from ChaCha8.
pub fn test_triples(dim: usize) -> Vec<[usize; 3]> {
    if dim <= EXHAUSTIVE_DIM {
        let mut out = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out.push([i, j, k]);
                }
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(TRIPLE_SEED);
        (0..SAMPLED_TRIPLES)
            .map(|_| [rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim)])
            .collect()
    }
}

fn bracket_int(alg: &GradedLieAlgebra, i: usize, v: &[(usize, i128)]) -> Vec<(usize, i128)> {
    let mut acc = Acc::new();
    for &(j, c) in v {
        for &(k, s) in alg.structure(i, j) {
            *acc.entry(k).or_insert(0) += c * s as i128;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn lift(pairs: &[(usize, i64)]) -> Vec<(usize, i128)> {
    pairs.iter().map(|&(k, c)| (k, c as i128)).collect()
}

/// `[b_i, [b_j, b_k]] + [b_j, [b_k, b_i]] + [b_k, [b_i, b_j]] = 0`.
pub fn check_jacobi(alg: &GradedLieAlgebra, triples: &[[usize; 3]]) -> CheckOutcome {
    let mut t = Tally::new("jacobi");
    for &[i, j, k] in triples {
        let mut acc = Acc::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, v) in bracket_int(alg, a, &lift(alg.structure(b, c))) {
                *acc.entry(m).or_insert(0) += v;
            }
        }
        t.record(acc.values().all(|v| *v == 0), || names(alg, &[i, j, k]));
    }
    t.outcome
}

/// `[b_i, b_j] = -[b_j, b_i]` and `[b_i, b_i] = 0`.
pub fn check_antisymmetry(alg: &GradedLieAlgebra) -> CheckOutcome {
    let mut t = Tally::new("antisymmetry");
    let dim = alg.dim();
    for i in 0..dim {
        for j in i..dim {
            let ij = alg.structure(i, j);
            let mut ji: Vec<(usize, i64)> = alg.structure(j, i).iter().map(|&(k, c)| (k, -c)).collect();
            let mut ij = ij.to_vec();
            ij.sort_unstable();
            ji.sort_unstable();
            t.record(ij == ji, || names(alg, &[i, j]));
        }
    }
    t.outcome
}

/// `[g_i, g_j] ⊂ g_{i+j}`, with `g_{±2} = 0`.
pub fn check_grading(alg: &GradedLieAlgebra) -> CheckOutcome {
    let mut t = Tally::new("grading");
    let dim = alg.dim();
    for i in 0..dim {
        for j in 0..dim {
            let g = alg.grade(i) + alg.grade(j);
            let ok = alg.structure(i, j).iter().all(|&(k, _)| alg.grade(k) == g);
            t.record(ok, || names(alg, &[i, j]));
        }
    }
    t.outcome
}

/// `B([x, y], z) = B(x, [y, z])`.
pub fn check_killing_invariance(alg: &GradedLieAlgebra, triples: &[[usize; 3]]) -> CheckOutcome {
    let mut t = Tally::new("killing-invariance");
    let pair = |a: &[(usize, i64)], b: usize| -> i128 {
        a.iter().map(|&(k, c)| c as i128 * alg.killing_basis(k, b) as i128).sum()
    };
    for &[i, j, k] in triples {
        let lhs = pair(alg.structure(i, j), k);
        let rhs = pair(alg.structure(j, k), i);
        t.record(lhs == rhs, || names(alg, &[i, j, k]));
    }
    t.outcome
}

/// The Killing pairing `g_1 x g_-1` has full rank.
pub fn check_pairing(alg: &GradedLieAlgebra) -> CheckOutcome {
    let mut t = Tally::new("perfect-pairing");
    let m: Vec<Vec<Rational>> = alg
        .indices_of_grade(1)
        .iter()
        .map(|&p| {
            alg.indices_of_grade(-1)
                .iter()
                .map(|&q| Rational::from_i64(alg.killing_basis(p, q)))
                .collect()
        })
        .collect();
    let n = alg.dim_of_grade(-1);
    let r = rank(&m);
    t.record(r == n && alg.dim_of_grade(1) == n, || format!("rank {r} of {n}"));
    t.outcome
}

/// `g_0 = g_0^ss ⊕ span(E)` with the summands Killing-orthogonal and `E`
/// acting by the grade.
pub fn check_reductive(alg: &GradedLieAlgebra) -> CheckOutcome {
    let mut t = Tally::new("reductive-decomposition");
    let e = alg.grading_element::<Rational>();
    let ss = alg.semisimple_part::<Rational>();
    t.record(alg.is_in_grade(&e, 0), || "E is not in g_0".into());
    t.record(!ss.contains(&e), || "E lies in g_0^ss".into());
    t.record(ss.dim() + 1 == alg.dim_of_grade(0), || format!("dim g_0^ss = {}", ss.dim()));
    for row in ss.rows() {
        t.record(alg.killing(&e, row).is_negligible(), || "E not orthogonal to g_0^ss".into());
        t.record(alg.is_in_grade(row, 0), || "g_0^ss leaves g_0".into());
    }
    for i in 0..alg.dim() {
        let v = LieVec::<Rational>::unit(i);
        let ev = alg.bracket(&e, &v);
        let expected = v.scaled(&Rational::from_i64(alg.grade(i) as i64));
        t.record(ev == expected, || format!("[E, {}]", alg.basis_name(i)));
    }
    t.outcome
}

/// Every basis vector of `g_-1` and `g_1` generates its component under `g_0`.
pub fn check_irreducible(alg: &GradedLieAlgebra) -> CheckOutcome {
    let mut t = Tally::new("irreducibility");
    for grade in [-1, 1] {
        let n = alg.dim_of_grade(grade);
        for &i in alg.indices_of_grade(grade) {
            let span = alg.g0_orbit_span(&LieVec::<Rational>::unit(i));
            t.record(span.dim() == n, || alg.basis_name(i));
        }
    }
    t.outcome
}

/// Runs every structural check.
pub fn structure_report(alg: &GradedLieAlgebra) -> StructureReport {
    let triples = test_triples(alg.dim());
    let checks = vec![
        check_antisymmetry(alg),
        check_jacobi(alg, &triples),
        check_grading(alg),
        check_killing_invariance(alg, &triples),
        check_pairing(alg),
        check_reductive(alg),
        check_irreducible(alg),
    ];
    let pass = checks.iter().all(CheckOutcome::pass);
    StructureReport {
        dims: Dims::of(alg),
        checks,
        pass,
    }
}

fn names(alg: &GradedLieAlgebra, idx: &[usize]) -> String {
    idx.iter().map(|&i| alg.basis_name(i)).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedlie::build_algebra;
    use crate::rootsystem::{build_root_system, Series, SeriesLabel};

    fn alg(series: Series, rank: usize, node: usize) -> GradedLieAlgebra {
        let rs = build_root_system(SeriesLabel::new(series, rank).unwrap()).unwrap();
        build_algebra(&rs, node).unwrap()
    }

    #[test]
    fn small_algebras_pass() {
        for (s, n, node) in [(Series::A, 2, 1), (Series::B, 2, 1), (Series::C, 3, 3), (Series::D, 4, 4)] {
            let r = structure_report(&alg(s, n, node));
            assert!(r.pass, "{s}{n}: {:?}", r.checks.iter().find(|c| !c.pass()));
        }
    }

    #[test]
    fn a2_dims() {
        let d = Dims::of(&alg(Series::A, 2, 1));
        assert_eq!((d.g, d.g_minus, d.g0, d.g0_ss), (8, 2, 4, 3));
        assert_eq!(d.ideals, vec![3]);
    }

    #[test]
    fn triples_are_deterministic() {
        assert_eq!(test_triples(3).len(), 27);
        let a = test_triples(78);
        assert_eq!(a.len(), SAMPLED_TRIPLES);
        assert_eq!(a, test_triples(78));
    }

    #[test]
    fn corrupted_constant_is_caught() {
        let g = alg(Series::A, 2, 1);
        let e = g.root_vector(0);
        let f = g.root_vector(g.root_system().num_positive());
        let bad = g.with_corrupted_constant(e, f, 1, 1);
        let r = structure_report(&bad);
        assert!(!r.pass);
        let jac = r.checks.iter().find(|c| c.name == "jacobi").unwrap();
        assert!(!jac.pass());
        assert!(jac.first_failure.is_some());
    }
}
