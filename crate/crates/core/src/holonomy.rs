//! The `∂` operator and the span certificates built on it.
//!
//! A linear map `P: g_-1 -> g_1` is held as a matrix over a [`DualFrame`]:
//! `P(X_a) = sum_b m[a][b] Z_b`. The operator is
//! `∂P(X, Y) = [P(X), Y] - [P(Y), X]`, which lands in `g_0`.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedlie::{DualFrame, GradedLieAlgebra, LieVec, SimpleIdeal};
use crate::linalg::{SparseVec, Subspace};
use crate::multitensor::{
    contract, contract_mixed, span_generators, sym_basis, MixedTensor, MultiIndex, Normalization, SpanConfig,
    SpanTracker, SymTensor, Variance,
};
use crate::scalar::Scalar;

/// Matrix of a linear map `g_-1 -> g_1` in a dual frame.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoCandidate<S> {
    matrix: Vec<Vec<S>>,
    symmetric: bool,
}

impl<S: Scalar> RhoCandidate<S> {
    pub fn zero(n: usize) -> Self {
        Self::from_matrix(vec![vec![S::zero(); n]; n])
    }

    /// `matrix[a][b]` is the `Z_b` coefficient of `P(X_a)`. Since
    /// `B(P(X_a), X_b) = matrix[a][b]`, the map lies in `S^2 g_1` exactly when
    /// the matrix is symmetric.
    pub fn from_matrix(matrix: Vec<Vec<S>>) -> Self {
        let n = matrix.len();
        let symmetric = (0..n).all(|a| (0..a).all(|b| (matrix[a][b].clone() - matrix[b][a].clone()).is_negligible()));
        Self { matrix, symmetric }
    }

    /// `Z_i (x) Z_j`, read as `X -> Z_i B(Z_j, X)`.
    pub fn rank_one(n: usize, i: usize, j: usize) -> Self {
        let mut m = vec![vec![S::zero(); n]; n];
        m[j][i] = S::one();
        Self::from_matrix(m)
    }

    /// The symmetric product `Z_i Z_j`, read as
    /// `X -> (Z_i B(Z_j, X) + Z_j B(Z_i, X)) / 2`.
    pub fn sym_pair(n: usize, i: usize, j: usize) -> Self {
        let half = S::from_ratio(1, 2);
        let mut m = vec![vec![S::zero(); n]; n];
        m[j][i] = m[j][i].clone() + half.clone();
        m[i][j] = m[i][j].clone() + half;
        Self::from_matrix(m)
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.matrix
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self::from_matrix(
            self.matrix
                .iter()
                .map(|row| row.iter().map(|x| x.clone() * c.clone()).collect())
                .collect(),
        )
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self::from_matrix(
            self.matrix
                .iter()
                .zip(&other.matrix)
                .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect())
                .collect(),
        )
    }

    /// `P(X_a)`.
    pub fn image_of_basis(&self, frame: &DualFrame<S>, a: usize) -> LieVec<S> {
        let mut out = LieVec::zero();
        for (b, c) in self.matrix[a].iter().enumerate() {
            if !c.is_negligible() {
                out.add_scaled(frame.z(b), c);
            }
        }
        out
    }

    /// `P(X)` for any `X` in `g_-1`.
    pub fn apply(&self, alg: &GradedLieAlgebra, frame: &DualFrame<S>, x: &LieVec<S>) -> LieVec<S> {
        let mut out = LieVec::zero();
        for (a, c) in frame.coords_minus(alg, x).into_iter().enumerate() {
            if !c.is_negligible() {
                out.add_scaled(&self.image_of_basis(frame, a), &c);
            }
        }
        out
    }
}

/// `∂P(X, Y) = [P(X), Y] - [P(Y), X]`.
pub fn del_op<S: Scalar>(
    alg: &GradedLieAlgebra,
    frame: &DualFrame<S>,
    p: &RhoCandidate<S>,
    x: &LieVec<S>,
    y: &LieVec<S>,
) -> Result<LieVec<S>> {
    if !alg.is_in_grade(x, -1) || !alg.is_in_grade(y, -1) {
        return Err(Error::Grade("del_op arguments must lie in g_-1".into()));
    }
    let px = p.apply(alg, frame, x);
    let py = p.apply(alg, frame, y);
    Ok(alg.bracket(&px, y).minus(&alg.bracket(&py, x)))
}

/// `∂P(X_k, X_l)` on frame vectors.
pub fn del_op_basis<S: Scalar>(
    alg: &GradedLieAlgebra,
    frame: &DualFrame<S>,
    p: &RhoCandidate<S>,
    k: usize,
    l: usize,
) -> LieVec<S> {
    let pk = p.image_of_basis(frame, k);
    let pl = p.image_of_basis(frame, l);
    alg.bracket(&pk, frame.x(l)).minus(&alg.bracket(&pl, frame.x(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// All of `g_0`.
    G0,
    /// The semisimple part of `g_0`.
    G0ss,
    /// `S^2 g_-1^*`.
    S2Dual,
    /// `g_-1^* (x) g_-1^*`.
    DualTensorDual,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::G0 => "g0",
            Target::G0ss => "g0ss",
            Target::S2Dual => "S2(g-1*)",
            Target::DualTensorDual => "g-1* (x) g-1*",
        })
    }
}

/// Outcome of one span certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check: String,
    pub target: Target,
    pub target_dim: usize,
    pub achieved_dim: usize,
    /// Every accepted image lies in the target.
    pub contained: bool,
    /// Generator descriptor for each vector that enlarged the span.
    pub witnesses: Vec<String>,
    pub generators_consumed: u64,
    /// Span dimension found by an independent engine, where one was run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<usize>,
    pub exact: bool,
    pub pass: bool,
    pub elapsed_us: u64,
}

impl Certificate {
    fn settle(&mut self) {
        self.pass = self.contained
            && self.achieved_dim == self.target_dim
            && self.cross_check.map_or(true, |d| d == self.achieved_dim);
    }
}

/// A certificate together with the span it certifies.
#[derive(Clone, Debug)]
pub struct Certified<S> {
    pub certificate: Certificate,
    pub span: Subspace<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Stop at the target dimension. Without it every generator is evaluated.
    pub early_exit: bool,
    pub parallel: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            early_exit: true,
            parallel: false,
        }
    }
}

impl CertifyOptions {
    fn span_config(&self, target: usize) -> SpanConfig {
        SpanConfig {
            target: self.early_exit.then_some(target),
            parallel: self.parallel,
            ..SpanConfig::default()
        }
    }
}

fn finish<S: Scalar, W: Clone + fmt::Display>(
    check: &str,
    target: Target,
    target_space: &Subspace<S>,
    tracker: SpanTracker<S, W>,
    start: Instant,
) -> Certified<S> {
    let contained = tracker.accepted().iter().all(|(_, v)| target_space.contains(v));
    let mut certificate = Certificate {
        check: check.to_string(),
        target,
        target_dim: target_space.dim(),
        achieved_dim: tracker.dim(),
        contained,
        witnesses: tracker.witnesses().map(|w| w.to_string()).collect(),
        generators_consumed: tracker.consumed(),
        cross_check: None,
        exact: S::EXACT,
        pass: false,
        elapsed_us: start.elapsed().as_micros() as u64,
    };
    certificate.settle();
    Certified {
        certificate,
        span: tracker.subspace().clone(),
    }
}

fn g0_target<S: Scalar>(alg: &GradedLieAlgebra, symmetric: bool) -> (Target, Subspace<S>) {
    if symmetric {
        (Target::G0ss, alg.semisimple_part())
    } else {
        (Target::G0, alg.zero_part())
    }
}

/// Pairs `k < l` of frame indices in lexicographic order.
fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..n).flat_map(move |k| (k + 1..n).map(move |l| (k, l)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lemma1Gen {
    symmetric: bool,
    i: usize,
    j: usize,
    k: usize,
    l: usize,
}

impl fmt::Display for Lemma1Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.symmetric { "." } else { "(x)" };
        write!(
            f,
            "P=Z{}{}Z{} X=X{} Y=X{}",
            self.i + 1,
            op,
            self.j + 1,
            self.k + 1,
            self.l + 1
        )
    }
}

/// Spans `∂P(X_k, X_l)` over `P = Z_i Z_j` (symmetric, `i <= j`) or
/// `P = Z_i (x) Z_j` (all ordered pairs) and `k < l`, against `g_0^ss`
/// respectively `g_0`.
pub fn lemma1_certify<S: Scalar>(alg: &GradedLieAlgebra, symmetric: bool, opts: CertifyOptions) -> Certified<S> {
    let start = Instant::now();
    let frame = DualFrame::<S>::root_frame(alg);
    let n = frame.n();
    let (target, space) = g0_target::<S>(alg, symmetric);
    let gens = (0..n)
        .flat_map(move |i| {
            let lo = if symmetric { i } else { 0 };
            (lo..n).map(move |j| (i, j))
        })
        .flat_map(move |(i, j)| pairs(n).map(move |(k, l)| Lemma1Gen { symmetric, i, j, k, l }));
    let eval = |g: &Lemma1Gen| {
        let p = if g.symmetric {
            RhoCandidate::sym_pair(n, g.i, g.j)
        } else {
            RhoCandidate::rank_one(n, g.i, g.j)
        };
        let v = del_op_basis(alg, &frame, &p, g.k, g.l);
        (!v.is_zero()).then_some(v)
    };
    let tracker = span_generators(alg.dim(), gens, eval, opts.span_config(space.dim()));
    let check = if symmetric { "lemma1-symmetric" } else { "lemma1-full" };
    finish(check, target, &space, tracker, start)
}

/// Evidence that the image of the full map is not inside `g_0^ss`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterWitness<S> {
    /// Frame indices of `X` and `Y`.
    pub x: usize,
    pub y: usize,
    pub rho: RhoCandidate<S>,
    /// `B(∂P(X, Y), E)`.
    pub value: S,
    /// `B(P(X), Y)`.
    pub pairing: S,
}

impl<S: Scalar> CenterWitness<S> {
    pub fn pass(&self) -> bool {
        !self.value.is_negligible() && self.value == self.pairing
    }
}

/// `B(∂P(X, Y), E)` for frame vectors.
pub fn center_component<S: Scalar>(
    alg: &GradedLieAlgebra,
    frame: &DualFrame<S>,
    p: &RhoCandidate<S>,
    k: usize,
    l: usize,
) -> S {
    let e = alg.grading_element::<S>();
    alg.killing(&del_op_basis(alg, frame, p, k, l), &e)
}

/// `X = X_1`, `Y = X_2` and `P` with `P(X_1) = Z_2`, `P(X_2) = 0`.
pub fn lemma1_center_witness<S: Scalar>(alg: &GradedLieAlgebra) -> Result<CenterWitness<S>> {
    let frame = DualFrame::<S>::root_frame(alg);
    let n = frame.n();
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n });
    }
    let rho = RhoCandidate::rank_one(n, 1, 0);
    let value = center_component(alg, &frame, &rho, 0, 1);
    let pairing = alg.killing(&rho.image_of_basis(&frame, 0), frame.x(1));
    Ok(CenterWitness {
        x: 0,
        y: 1,
        rho,
        value,
        pairing,
    })
}

/// Evidence that the symmetric image meets one simple ideal of `g_0^ss`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealWitness<S> {
    /// Dynkin node of `beta`, 1-based.
    pub beta: usize,
    /// Coefficients of the witness on `e_beta` and `e_-beta`.
    pub plus: S,
    pub minus: S,
    /// `B(witness, E)`.
    pub center: S,
    pub in_ideal: bool,
    pub witness: LieVec<S>,
}

impl<S: Scalar> IdealWitness<S> {
    pub fn pass(&self) -> bool {
        !self.plus.is_negligible() && !self.minus.is_negligible() && self.center.is_negligible() && self.in_ideal
    }
}

/// Builds `P = Z_alpha^2 + Z_{alpha+beta}^2` for the smallest `beta` of the
/// ideal adjacent to the crossed node and evaluates
/// `∂P(X_alpha, X_{alpha+beta})`.
pub fn lemma1_ideal_witness<S: Scalar>(alg: &GradedLieAlgebra, ideal: &SimpleIdeal<S>) -> Result<IdealWitness<S>> {
    let rs = alg.root_system();
    let node = alg.node();
    let beta = rs
        .neighbours(node)
        .into_iter()
        .filter(|b| ideal.nodes.contains(b))
        .min()
        .ok_or(Error::NoAdjacentRoot)?;
    let rank = alg.rank();
    let mut sum = vec![0i64; rank];
    sum[node - 1] += 1;
    sum[beta - 1] += 1;
    let neg_sum: Vec<i64> = sum.iter().map(|c| -c).collect();
    if !rs.is_root(&sum) {
        return Err(Error::NoAdjacentRoot);
    }
    let npos = rs.num_positive();
    let frame = DualFrame::<S>::root_frame(alg);
    let slot = |basis_idx: usize| -> usize {
        (0..frame.n())
            .find(|&a| frame.x(a).leading() == Some(basis_idx))
            .expect("negative root vectors of grade -1 are frame vectors")
    };
    let a = slot(alg.root_vector(npos + node - 1));
    let b = slot(alg.root_vector(rs.index_of(&neg_sum).expect("negative of a root")));
    let n = frame.n();
    let p = RhoCandidate::sym_pair(n, a, a).plus(&RhoCandidate::sym_pair(n, b, b));
    let witness = del_op_basis(alg, &frame, &p, a, b);
    let e_beta = alg.root_vector(beta - 1);
    let f_beta = alg.root_vector(npos + beta - 1);
    let e = alg.grading_element::<S>();
    let part = witness.filtered(|i| i == e_beta || i == f_beta);
    Ok(IdealWitness {
        beta,
        plus: witness.get(e_beta),
        minus: witness.get(f_beta),
        center: alg.killing(&witness, &e),
        in_ideal: !part.is_zero() && ideal.subspace.contains(&part),
        witness,
    })
}

/// The element `sum_{i<j} lambda_i^4 lambda_j^2` of `S^6 V*`.
pub fn lemma2_symmetric_tensor<S: Scalar>(n: usize) -> SymTensor<S> {
    let mut t = SymTensor::zero(6, n, Variance::Dual);
    for i in 0..n {
        for j in i + 1..n {
            t.add_term(MultiIndex::new(vec![i, i, i, i, j, j]), S::one());
        }
    }
    t
}

/// The element `sum_{i,j} lambda_i^3 lambda_j^2 (x) lambda_i` of
/// `S^5 V* (x) V*`; with `include_diagonal = false` the terms `i = j` are
/// dropped.
pub fn lemma2_mixed_tensor<S: Scalar>(n: usize, include_diagonal: bool) -> MixedTensor<S> {
    let mut t = MixedTensor::zero(5, n);
    for i in 0..n {
        for j in 0..n {
            if i == j && !include_diagonal {
                continue;
            }
            t.add_term(MultiIndex::new(vec![i, i, i, j, j]), i, S::one());
        }
    }
    t
}

/// One preimage check: `contract(T, preimage)` must be a nonzero multiple of
/// the single basis tensor `expected`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub preimage: String,
    pub expected: String,
    pub ok: bool,
}

/// Rank certificate for a Lemma 2 tensor plus the preimage checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub n: usize,
    pub certificate: Certificate,
    pub spot_checks: Vec<SpotCheck>,
}

impl Lemma2Report {
    pub fn pass(&self) -> bool {
        self.certificate.pass && self.spot_checks.iter().all(|s| s.ok)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Lemma2Options {
    pub normalization: Normalization,
    /// Drop the `i = j` terms of the mixed tensor.
    pub off_diagonal_only: bool,
    pub certify: CertifyOptions,
}

fn lambda_name(m: &MultiIndex) -> String {
    m.to_string().replace('e', "l")
}

/// Images of `W -> contract(T, W)` on `S^4 V` as sparse vectors: over
/// `sym_basis(2, n)` in the symmetric case and over `a * n + b` for
/// `lambda_a (x) lambda_b` in the mixed case.
pub fn lemma2_image<S: Scalar>(n: usize, symmetric: bool, w: &MultiIndex, opts: &Lemma2Options) -> SparseVec<S> {
    let wt = SymTensor::monomial(w.clone(), n, Variance::Vector);
    if symmetric {
        let basis = sym_basis(2, n);
        let r = contract(&lemma2_symmetric_tensor::<S>(n), &wt, opts.normalization).expect("shapes agree");
        SparseVec::from_pairs(
            r.terms()
                .map(|(m, c)| (basis.binary_search(m).expect("degree-2 key"), c.clone())),
        )
    } else {
        let r = contract_mixed(&lemma2_mixed_tensor::<S>(n, !opts.off_diagonal_only), &wt, opts.normalization)
            .expect("shapes agree");
        SparseVec::from_pairs(r.terms().map(|((m, b), c)| (m.indices()[0] * n + b, c.clone())))
    }
}

/// Certifies that the Lemma 2 tensor maps `S^4 V` onto `S^2 V*`
/// (symmetric) or `V* (x) V*` (mixed), with `n = dim V`.
pub fn lemma2_certify<S: Scalar>(n: usize, symmetric: bool, opts: Lemma2Options) -> Result<Lemma2Report> {
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n });
    }
    let start = Instant::now();
    let (target, ambient) = if symmetric {
        (Target::S2Dual, n * (n + 1) / 2)
    } else {
        (Target::DualTensorDual, n * n)
    };
    let gens = sym_basis(4, n);
    let eval = |w: &MultiIndex| {
        let v = lemma2_image::<S>(n, symmetric, w, &opts);
        (!v.is_zero()).then_some(v)
    };
    let tracker = span_generators(ambient, gens, eval, opts.certify.span_config(ambient));
    let full = Subspace::spanned_by(ambient, &(0..ambient).map(SparseVec::unit).collect::<Vec<_>>());
    let check = if symmetric { "lemma2-symmetric" } else { "lemma2-mixed" };
    let certificate = finish(check, target, &full, tracker, start).certificate;

    let mut spot_checks = Vec::new();
    let mut check_one = |pre: Vec<usize>, expect_key: usize, expect_name: String| {
        let w = MultiIndex::new(pre);
        let v = lemma2_image::<S>(n, symmetric, &w, &opts);
        let ok = v.nnz() == 1 && v.leading() == Some(expect_key);
        spot_checks.push(SpotCheck {
            preimage: w.to_string(),
            expected: expect_name,
            ok,
        });
    };
    if symmetric {
        let basis = sym_basis(2, n);
        let key = |m: MultiIndex| basis.binary_search(&m).expect("degree-2 key");
        for i in 0..n - 1 {
            let m = MultiIndex::new(vec![i, i]);
            check_one(vec![i, i, i + 1, i + 1], key(m.clone()), lambda_name(&m));
        }
        let m = MultiIndex::new(vec![n - 1, n - 1]);
        check_one(vec![n - 2; 4], key(m.clone()), lambda_name(&m));
        for i in 0..n {
            for j in i + 1..n {
                let m = MultiIndex::new(vec![i, j]);
                check_one(vec![i, i, i, j], key(m.clone()), lambda_name(&m));
            }
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                let name = format!("l{} (x) l{}", j + 1, i + 1);
                let pre = if i == j { vec![i; 4] } else { vec![i, i, i, j] };
                if i == j && opts.off_diagonal_only {
                    continue;
                }
                check_one(pre, j * n + i, name);
            }
        }
    }
    Ok(Lemma2Report {
        n,
        certificate,
        spot_checks,
    })
}

/// The map `P_W` obtained by contracting `W` into the Lemma 2 tensor and
/// reading the two residual slots through the Killing pairing.
pub fn theorem_rho<S: Scalar>(n: usize, exact_weyl: bool, w: &MultiIndex) -> RhoCandidate<S> {
    let wt = SymTensor::monomial(w.clone(), n, Variance::Vector);
    if exact_weyl {
        let r = contract(&lemma2_symmetric_tensor::<S>(n), &wt, Normalization::Average).expect("shapes agree");
        RhoCandidate::from_matrix(r.quadratic_form())
    } else {
        let r = contract_mixed(&lemma2_mixed_tensor::<S>(n, true), &wt, Normalization::Average).expect("shapes agree");
        // residual symmetric slot is the argument, the free slot the value
        RhoCandidate::from_matrix(r.bilinear_matrix())
    }
}

#[derive(Clone, Debug)]
struct TheoremGen<S> {
    w: Arc<(MultiIndex, RhoCandidate<S>)>,
    k: usize,
    l: usize,
}

impl<S> fmt::Display for TheoremGen<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W={} X=X{} Y=X{}", self.w.0, self.k + 1, self.l + 1)
    }
}

/// Composes Lemma 2 with `∂`: spans `∂P_W(X_k, X_l)` over `W` in `S^4 g_-1`
/// and `k < l`, against `g_0^ss` (exact Weyl) or `g_0`.
pub fn theorem_certify<S: Scalar>(alg: &GradedLieAlgebra, exact_weyl: bool, opts: CertifyOptions) -> Certified<S> {
    let start = Instant::now();
    let frame = DualFrame::<S>::root_frame(alg);
    let n = frame.n();
    let (target, space) = g0_target::<S>(alg, exact_weyl);
    let gens = sym_basis(4, n).into_iter().flat_map(move |w| {
        let rho = theorem_rho::<S>(n, exact_weyl, &w);
        let shared = Arc::new((w, rho));
        pairs(n).map(move |(k, l)| TheoremGen {
            w: shared.clone(),
            k,
            l,
        })
    });
    let eval = |g: &TheoremGen<S>| {
        let v = del_op_basis(alg, &frame, &g.w.1, g.k, g.l);
        (!v.is_zero()).then_some(v)
    };
    let tracker = span_generators(alg.dim(), gens, eval, opts.span_config(space.dim()));
    let check = if exact_weyl { "theorem-exact" } else { "theorem-general" };
    finish(check, target, &space, tracker, start)
}

#[cfg(test)]
mod tests;
