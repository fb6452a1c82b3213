//! Symmetric and mixed tensors over a coordinate space, their contraction,
//! and incremental span tracking.
//!
//! A symmetric tensor of degree `k` on an `n`-dimensional space is stored as a
//! homogeneous polynomial: the key `M` (a sorted multiset of indices) carries
//! the coefficient of the monomial `x^M`. Contraction follows the
//! polynomial-function convention, see [`contract`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace};
use crate::scalar::Scalar;

/// Sorted multiset of 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        Self(indices)
    }

    pub fn from_counts(counts: &[u32]) -> Self {
        let mut v = Vec::new();
        for (i, &c) in counts.iter().enumerate() {
            v.extend(std::iter::repeat(i).take(c as usize));
        }
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Multiplicity of each index in `0..n`.
    pub fn counts(&self, n: usize) -> Vec<u32> {
        let mut c = vec![0; n];
        for &i in &self.0 {
            c[i] += 1;
        }
        c
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Display for MultiIndex {
    /// Monomial notation with 1-based indices, e.g. `e1^2 e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let idx = self.0[i];
            let run = self.0[i..].iter().take_while(|&&j| j == idx).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "e{}", idx + 1)?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// All multisets of size `k` from `0..n`, lexicographic.
pub fn sym_basis(k: usize, n: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial(n + k - 1, k) as usize);
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(k, n, i, cur, out);
            cur.pop();
        }
    }
    if n > 0 || k == 0 {
        rec(k, n, 0, &mut cur, &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

fn factorial<S: Scalar>(n: u32) -> S {
    (1..=n as i64).fold(S::one(), |acc, i| acc * S::from_i64(i))
}

/// `M! / (M - K)!` summed over coordinates, or `None` when `K` is not a
/// sub-multiset of `M`.
fn falling<S: Scalar>(m: &[u32], k: &[u32]) -> Option<S> {
    let mut c = S::one();
    for (a, b) in m.iter().zip(k) {
        if b > a {
            return None;
        }
        for t in 0..*b {
            c = c * S::from_i64((*a - t) as i64);
        }
    }
    Some(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variance {
    Vector,
    Dual,
}

/// Homogeneous element of `S^k V` or `S^k V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor<S> {
    degree: usize,
    dim: usize,
    variance: Variance,
    coeffs: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> SymTensor<S> {
    pub fn zero(degree: usize, dim: usize, variance: Variance) -> Self {
        Self {
            degree,
            dim,
            variance,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(m: MultiIndex, dim: usize, variance: Variance) -> Self {
        let mut t = Self::zero(m.degree(), dim, variance);
        t.add_term(m, S::one());
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, m: &MultiIndex) -> S {
        self.coeffs.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> + '_ {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, m: MultiIndex, c: S) {
        assert_eq!(m.degree(), self.degree, "monomial degree");
        assert!(m.max_index().map_or(true, |i| i < self.dim), "index out of range");
        let e = self.coeffs.entry(m.clone()).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_negligible() {
            self.coeffs.remove(&m);
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree, self.dim, self.variance);
        for (m, v) in &self.coeffs {
            let w = v.clone() * c.clone();
            if !w.is_negligible() {
                out.coeffs.insert(m.clone(), w);
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_shape(other.degree, other.dim)?;
        let mut out = self.clone();
        for (m, v) in &other.coeffs {
            out.add_term(m.clone(), v.clone());
        }
        Ok(out)
    }

    fn check_shape(&self, degree: usize, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        if degree != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: degree,
            });
        }
        Ok(())
    }

    /// Coefficients as a sparse vector over `sym_basis(degree, dim)`.
    pub fn to_vec(&self, basis: &BTreeMap<MultiIndex, usize>) -> SparseVec<S> {
        SparseVec::from_pairs(self.coeffs.iter().map(|(m, c)| (basis[m], c.clone())))
    }

    /// Symmetric bilinear form `b` with `b(x, x)` equal to this quadratic
    /// polynomial, as a dense matrix.
    pub fn quadratic_form(&self) -> Vec<Vec<S>> {
        assert_eq!(self.degree, 2, "quadratic_form needs degree 2");
        let n = self.dim;
        let half = S::from_ratio(1, 2);
        let mut b = vec![vec![S::zero(); n]; n];
        for (m, c) in &self.coeffs {
            let (i, j) = (m.0[0], m.0[1]);
            if i == j {
                b[i][i] = c.clone();
            } else {
                b[i][j] = c.clone() * half.clone();
                b[j][i] = b[i][j].clone();
            }
        }
        b
    }
}

/// Element of `S^k V* (x) V*`: a degree-`k` polynomial for every value of the
/// free slot.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedTensor<S> {
    degree: usize,
    dim: usize,
    coeffs: BTreeMap<(MultiIndex, usize), S>,
}

impl<S: Scalar> MixedTensor<S> {
    pub fn zero(degree: usize, dim: usize) -> Self {
        Self {
            degree,
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, m: &MultiIndex, free: usize) -> S {
        self.coeffs
            .get(&(m.clone(), free))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, usize), &S)> + '_ {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, m: MultiIndex, free: usize, c: S) {
        assert_eq!(m.degree(), self.degree, "monomial degree");
        assert!(free < self.dim && m.max_index().map_or(true, |i| i < self.dim));
        let key = (m, free);
        let e = self.coeffs.entry(key.clone()).or_insert_with(S::zero);
        *e = e.clone() + c;
        if e.is_negligible() {
            self.coeffs.remove(&key);
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree, self.dim);
        for ((m, b), v) in &self.coeffs {
            out.add_term(m.clone(), *b, v.clone() * c.clone());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim || other.degree != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = self.clone();
        for ((m, b), v) in &other.coeffs {
            out.add_term(m.clone(), *b, v.clone());
        }
        Ok(out)
    }

    /// For degree 1: the matrix `r[a][b]` of `sum r_ab lambda_a (x) lambda_b`.
    pub fn bilinear_matrix(&self) -> Vec<Vec<S>> {
        assert_eq!(self.degree, 1, "bilinear_matrix needs residual degree 1");
        let n = self.dim;
        let mut r = vec![vec![S::zero(); n]; n];
        for ((m, b), v) in &self.coeffs {
            r[m.0[0]][*b] = v.clone();
        }
        r
    }
}

/// Scaling applied to contraction outputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Plug the slots of `W` into the symmetric multilinear form of `T`, so
    /// that `contract(T, e^K) = q!/(p+q)! * d^K T`.
    #[default]
    Average,
    /// Plain iterated derivative `d^K T`.
    Derivative,
}

fn differentiate<S: Scalar>(
    poly_m: &[u32],
    k: &[u32],
) -> Option<(MultiIndex, S)> {
    let c = falling::<S>(poly_m, k)?;
    let rest: Vec<u32> = poly_m.iter().zip(k).map(|(a, b)| a - b).collect();
    Some((MultiIndex::from_counts(&rest), c))
}

fn check_contract<S: Scalar>(t_degree: usize, t_dim: usize, w: &SymTensor<S>) -> Result<()> {
    if w.variance != Variance::Vector {
        return Err(Error::DimensionMismatch {
            expected: 0,
            found: 1,
        });
    }
    if w.dim != t_dim {
        return Err(Error::DimensionMismatch {
            expected: t_dim,
            found: w.dim,
        });
    }
    if w.degree > t_degree {
        return Err(Error::DimensionMismatch {
            expected: t_degree,
            found: w.degree,
        });
    }
    Ok(())
}

fn prefactor<S: Scalar>(p: usize, q: usize, norm: Normalization) -> S {
    match norm {
        Normalization::Average => factorial::<S>(q as u32) / factorial::<S>((p + q) as u32),
        Normalization::Derivative => S::one(),
    }
}

/// Contracts a vector tensor `w` of degree `p` into the dual tensor `t` of
/// degree `p + q`, returning a dual tensor of degree `q`.
pub fn contract<S: Scalar>(t: &SymTensor<S>, w: &SymTensor<S>, norm: Normalization) -> Result<SymTensor<S>> {
    if t.variance != Variance::Dual {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    check_contract(t.degree, t.dim, w)?;
    let (p, q, n) = (w.degree, t.degree - w.degree, t.dim);
    let pre = prefactor::<S>(p, q, norm);
    let mut out = SymTensor::zero(q, n, Variance::Dual);
    for (k, wc) in &w.coeffs {
        let kc = k.counts(n);
        for (m, tc) in &t.coeffs {
            if let Some((rest, c)) = differentiate::<S>(&m.counts(n), &kc) {
                out.add_term(rest, c * tc.clone() * wc.clone() * pre.clone());
            }
        }
    }
    Ok(out)
}

/// Contraction into the symmetric part of a mixed tensor; the free slot is
/// carried through.
pub fn contract_mixed<S: Scalar>(
    t: &MixedTensor<S>,
    w: &SymTensor<S>,
    norm: Normalization,
) -> Result<MixedTensor<S>> {
    check_contract(t.degree, t.dim, w)?;
    let (p, q, n) = (w.degree, t.degree - w.degree, t.dim);
    let pre = prefactor::<S>(p, q, norm);
    let mut out = MixedTensor::zero(q, n);
    for (k, wc) in &w.coeffs {
        let kc = k.counts(n);
        for ((m, b), tc) in &t.coeffs {
            if let Some((rest, c)) = differentiate::<S>(&m.counts(n), &kc) {
                out.add_term(rest, *b, c * tc.clone() * wc.clone() * pre.clone());
            }
        }
    }
    Ok(out)
}

/// Incremental span of sparse vectors with one witness per accepted vector.
#[derive(Clone, Debug)]
pub struct SpanTracker<S, W> {
    space: Subspace<S>,
    accepted: Vec<(W, SparseVec<S>)>,
    consumed: u64,
}

impl<S: Scalar, W: Clone> SpanTracker<S, W> {
    pub fn new(ambient: usize) -> Self {
        Self {
            space: Subspace::new(ambient),
            accepted: Vec::new(),
            consumed: 0,
        }
    }

    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace<S> {
        &self.space
    }

    /// Generators offered so far, accepted or not.
    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &W> + '_ {
        self.accepted.iter().map(|(w, _)| w)
    }

    pub fn accepted(&self) -> &[(W, SparseVec<S>)] {
        &self.accepted
    }

    /// Returns `true` if `v` enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<S>, witness: W) -> bool {
        self.consumed += 1;
        if self.space.insert(v).is_some() {
            self.accepted.push((witness, v.clone()));
            true
        } else {
            false
        }
    }

    /// Replays the accepted vectors of `other` in order.
    pub fn merge(&mut self, other: &Self) {
        for (w, v) in &other.accepted {
            if self.space.insert(v).is_some() {
                self.accepted.push((w.clone(), v.clone()));
            }
        }
        self.consumed += other.consumed;
    }

    /// Same as [`merge`](Self::merge) without counting `other`'s consumption.
    fn absorb(&mut self, other: Self, base: usize) {
        for (w, v) in other.accepted.into_iter().skip(base) {
            if self.space.insert(&v).is_some() {
                self.accepted.push((w, v));
            }
        }
    }
}

/// Controls for [`span_generators`].
#[derive(Clone, Copy, Debug)]
pub struct SpanConfig {
    /// Stop once the span reaches this dimension.
    pub target: Option<usize>,
    pub parallel: bool,
    pub chunk: usize,
    pub chunks_per_wave: usize,
}

impl Default for SpanConfig {
    fn default() -> Self {
        Self {
            target: None,
            parallel: false,
            chunk: 256,
            chunks_per_wave: 16,
        }
    }
}

/// Spans the images of a generator stream.
///
/// The parallel path works in waves of fixed-size chunks. Each chunk is
/// reduced against a snapshot of the span taken at the start of the wave, and
/// the chunk results are merged in chunk order, so the outcome does not
/// depend on the number of threads. Generators whose image is `None` are
/// counted but contribute nothing.
pub fn span_generators<S, G, I, F>(ambient: usize, gens: I, eval: F, cfg: SpanConfig) -> SpanTracker<S, G>
where
    S: Scalar,
    G: Clone + Send + Sync,
    I: IntoIterator<Item = G>,
    F: Fn(&G) -> Option<SparseVec<S>> + Sync,
{
    let done = |t: &SpanTracker<S, G>| cfg.target.is_some_and(|d| t.dim() >= d) || t.space.is_full();
    let mut tracker = SpanTracker::new(ambient);
    let mut gens = gens.into_iter();
    if !cfg.parallel {
        for g in gens {
            if done(&tracker) {
                break;
            }
            tracker.consumed += 1;
            if let Some(v) = eval(&g) {
                if tracker.space.insert(&v).is_some() {
                    tracker.accepted.push((g, v));
                }
            }
        }
        return tracker;
    }

    let chunk = cfg.chunk.max(1);
    let wave_len = chunk * cfg.chunks_per_wave.max(1);
    while !done(&tracker) {
        let wave: Vec<G> = gens.by_ref().take(wave_len).collect();
        if wave.is_empty() {
            break;
        }
        let base = tracker.accepted.len();
        let partial: Vec<(SpanTracker<S, G>, u64)> = wave
            .par_chunks(chunk)
            .map(|block| {
                let mut local = SpanTracker {
                    space: tracker.space.clone(),
                    accepted: tracker.accepted.clone(),
                    consumed: 0,
                };
                let mut used = 0u64;
                for g in block {
                    if done(&local) {
                        break;
                    }
                    used += 1;
                    if let Some(v) = eval(g) {
                        if local.space.insert(&v).is_some() {
                            local.accepted.push((g.clone(), v));
                        }
                    }
                }
                (local, used)
            })
            .collect();
        for (local, used) in partial {
            if done(&tracker) {
                break;
            }
            tracker.consumed += used;
            tracker.absorb(local, base);
        }
    }
    tracker
}
