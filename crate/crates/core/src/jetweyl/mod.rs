//! Jet calculus for Weyl connections on the flat homogeneous model, as germs
//! at the base point `o`.
//!
//! Coordinates `x_a` on `g_-1` come from a [`DualFrame`]: the point is
//! `sum_a x_a X_a`, `∂_a` is the constant field `X_a`, and the cotangent
//! vector `dx_a` is `Z_a`. The baseline connection is coordinate
//! differentiation, flat with vanishing Rho tensor.
//!
//! Sign convention: `∇̂_ξ s = ∇_ξ s + [Υ, ξ] • s` and
//! `P̂(ξ) = P(ξ) + ∇_ξ Υ - ½ [Υ, [Υ, ξ]]`, for which `R̂ = ∂P̂` holds exactly
//! with `∂P(X, Y) = [P(X), Y] - [P(Y), X]`.

mod jet;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use jet::{FiberTensor, JetPoly, Slot};

use crate::error::{Error, Result};
use crate::gradedlie::{DualFrame, GradedLieAlgebra, LieVec};
use crate::holonomy::{theorem_certify, Certificate, Certified, CertifyOptions, Target};
use crate::multitensor::{span_generators, sym_basis, MultiIndex, SpanConfig};
use crate::scalar::Scalar;

/// Order of the covariant derivative used for the holonomy span.
pub const SPAN_DERIVATIVES: usize = 4;

/// Smallest truncation order that represents the span computation.
pub const MIN_SPAN_ORDER: usize = SPAN_DERIVATIVES + 2;

/// Formal neighbourhood of `o` with truncation order `N`.
#[derive(Clone, Debug)]
pub struct ModelChart<'a, S> {
    alg: &'a GradedLieAlgebra,
    frame: DualFrame<S>,
    order: usize,
}

/// Coefficient where the two sides of the curvature identity differ.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureMismatch<S> {
    /// Frame indices of `ξ`, `η`, `ζ`.
    pub fields: [usize; 3],
    pub monomial: MultiIndex,
    pub key: Vec<usize>,
    pub direct: S,
    pub via_rho: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureCheck<S> {
    /// Highest jet degree that both sides represent.
    pub compared_order: usize,
    pub mismatches: Vec<CurvatureMismatch<S>>,
}

impl<S> CurvatureCheck<S> {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl<'a, S: Scalar> ModelChart<'a, S> {
    pub fn new(alg: &'a GradedLieAlgebra, order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidOrder { min: 2, found: order });
        }
        Ok(Self {
            alg,
            frame: DualFrame::root_frame(alg),
            order,
        })
    }

    pub fn with_frame(alg: &'a GradedLieAlgebra, frame: DualFrame<S>, order: usize) -> Result<Self> {
        let mut c = Self::new(alg, order)?;
        c.frame = frame;
        Ok(c)
    }

    pub fn algebra(&self) -> &GradedLieAlgebra {
        self.alg
    }

    pub fn frame(&self) -> &DualFrame<S> {
        &self.frame
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// The constant coordinate field `∂_a = X_a`.
    pub fn coordinate_field(&self, a: usize) -> JetPoly<S> {
        JetPoly::constant(self.n(), self.order, Slot::Minus, self.frame.x(a))
    }

    /// Constant section of a single-slot fiber.
    pub fn constant(&self, slot: Slot, v: &LieVec<S>) -> JetPoly<S> {
        JetPoly::constant(self.n(), self.order, slot, v)
    }

    /// Scalar coordinate functions `ξ^a = B(Z_a, ξ)`.
    pub fn components(&self, xi: &JetPoly<S>) -> Result<Vec<JetPoly<S>>> {
        if xi.slots() != [Slot::Minus] {
            return Err(Error::FiberMismatch(format!("vector field has fiber {:?}", xi.slots())));
        }
        Ok((0..self.n()).map(|a| xi.pair_slot(self.alg, 0, self.frame.z(a))).collect())
    }

    pub fn flat_nabla(&self, s: &JetPoly<S>, i: usize) -> Result<JetPoly<S>> {
        s.derivative(i)
    }

    /// `∇_ξ s` for the flat baseline.
    pub fn flat_directional(&self, s: &JetPoly<S>, xi: &JetPoly<S>) -> Result<JetPoly<S>> {
        let mut out: Option<JetPoly<S>> = None;
        for (a, xa) in self.components(xi)?.into_iter().enumerate() {
            let term = s.derivative(a)?.times(&xa)?;
            out = Some(match out {
                Some(o) => o.plus(&term)?,
                None => term,
            });
        }
        Ok(out.expect("n >= 1"))
    }

    /// Coordinate Lie bracket of vector fields.
    pub fn lie_bracket(&self, xi: &JetPoly<S>, eta: &JetPoly<S>) -> Result<JetPoly<S>> {
        self.flat_directional(eta, xi)?.minus(&self.flat_directional(xi, eta)?)
    }

    /// `[Υ, ξ]`, the `g_0`-valued connection term.
    pub fn connection_term(&self, upsilon: &JetPoly<S>, xi: &JetPoly<S>) -> Result<JetPoly<S>> {
        check_upsilon(upsilon)?;
        JetPoly::bracket(self.alg, upsilon, xi)
    }

    /// `∇̂_ξ s = ∇_ξ s + [Υ, ξ] • s`.
    pub fn hat_nabla(&self, upsilon: &JetPoly<S>, s: &JetPoly<S>, xi: &JetPoly<S>) -> Result<JetPoly<S>> {
        self.hat_nabla_with(|s, xi| self.flat_directional(s, xi), upsilon, s, xi)
    }

    /// Modifies an arbitrary connection `base` by `Υ`.
    pub fn hat_nabla_with<F>(&self, base: F, upsilon: &JetPoly<S>, s: &JetPoly<S>, xi: &JetPoly<S>) -> Result<JetPoly<S>>
    where
        F: Fn(&JetPoly<S>, &JetPoly<S>) -> Result<JetPoly<S>>,
    {
        let corr = JetPoly::act(self.alg, &self.connection_term(upsilon, xi)?, s)?;
        base(s, xi)?.plus(&corr)
    }

    /// `∇̂_ξ η - ∇̂_η ξ - [ξ, η]`.
    pub fn torsion(&self, upsilon: &JetPoly<S>, xi: &JetPoly<S>, eta: &JetPoly<S>) -> Result<JetPoly<S>> {
        self.hat_nabla(upsilon, eta, xi)?
            .minus(&self.hat_nabla(upsilon, xi, eta)?)?
            .minus(&self.lie_bracket(xi, eta)?)
    }

    /// `P̂(ξ) = P(ξ) + ∇_ξ Υ - ½ [Υ, [Υ, ξ]]`; `baseline` is `P` as a
    /// `g_1 (x) g_1` tensor whose first slot takes `ξ`.
    pub fn hat_rho_at(&self, upsilon: &JetPoly<S>, xi: &JetPoly<S>, baseline: Option<&JetPoly<S>>) -> Result<JetPoly<S>> {
        let inner = self.connection_term(upsilon, xi)?;
        let quad = JetPoly::bracket(self.alg, upsilon, &inner)?.scaled(&S::from_ratio(-1, 2));
        let mut out = self.flat_directional(upsilon, xi)?.plus(&quad)?;
        if let Some(p) = baseline {
            if p.slots() != [Slot::Plus, Slot::Plus] {
                return Err(Error::FiberMismatch(format!("Rho tensor has fiber {:?}", p.slots())));
            }
            for (a, xa) in self.components(xi)?.into_iter().enumerate() {
                out = out.plus(&p.pair_slot(self.alg, 0, self.frame.x(a)).times(&xa)?)?;
            }
        }
        Ok(out)
    }

    /// `P̂` as the section `sum_a Z_a (x) P̂(X_a)` of `g_1 (x) g_1`.
    pub fn hat_rho(&self, upsilon: &JetPoly<S>, baseline: Option<&JetPoly<S>>) -> Result<JetPoly<S>> {
        let mut out = JetPoly::zero(self.n(), self.order, vec![Slot::Plus, Slot::Plus]);
        for a in 0..self.n() {
            let pa = self.hat_rho_at(upsilon, &self.coordinate_field(a), baseline)?;
            out = out.plus(&pa.prepend(Slot::Plus, self.frame.z(a)))?;
        }
        Ok(out)
    }

    /// `R̂(ξ, η) ζ = ∇̂_ξ ∇̂_η ζ - ∇̂_η ∇̂_ξ ζ - ∇̂_[ξ,η] ζ`.
    pub fn hat_curvature_direct(
        &self,
        upsilon: &JetPoly<S>,
        xi: &JetPoly<S>,
        eta: &JetPoly<S>,
        zeta: &JetPoly<S>,
    ) -> Result<JetPoly<S>> {
        let a = self.hat_nabla(upsilon, &self.hat_nabla(upsilon, zeta, eta)?, xi)?;
        let b = self.hat_nabla(upsilon, &self.hat_nabla(upsilon, zeta, xi)?, eta)?;
        let c = self.hat_nabla(upsilon, zeta, &self.lie_bracket(xi, eta)?)?;
        a.minus(&b)?.minus(&c)
    }

    /// `(∂P̂)(ξ, η) • ζ = ([P̂(ξ), η] - [P̂(η), ξ]) • ζ`.
    pub fn del_rho_action(
        &self,
        upsilon: &JetPoly<S>,
        xi: &JetPoly<S>,
        eta: &JetPoly<S>,
        zeta: &JetPoly<S>,
    ) -> Result<JetPoly<S>> {
        let px = self.hat_rho_at(upsilon, xi, None)?;
        let py = self.hat_rho_at(upsilon, eta, None)?;
        let d = JetPoly::bracket(self.alg, &px, eta)?.minus(&JetPoly::bracket(self.alg, &py, xi)?)?;
        JetPoly::act(self.alg, &d, zeta)
    }

    /// Compares both sides of `R̂ = ∂P̂` on all triples of coordinate fields.
    /// Both sides are antisymmetric in the first two fields, so only pairs
    /// `a < b` are evaluated.
    pub fn check_curvature_identity(&self, upsilon: &JetPoly<S>) -> Result<CurvatureCheck<S>> {
        let n = self.n();
        let fields: Vec<JetPoly<S>> = (0..n).map(|a| self.coordinate_field(a)).collect();
        let inner: Vec<Vec<JetPoly<S>>> = fields
            .iter()
            .map(|b| fields.iter().map(|c| self.hat_nabla(upsilon, c, b)).collect())
            .collect::<Result<_>>()?;
        let rho: Vec<JetPoly<S>> = fields
            .iter()
            .map(|a| self.hat_rho_at(upsilon, a, None))
            .collect::<Result<_>>()?;
        let mut mismatches = Vec::new();
        let mut compared_order = self.order;
        for a in 0..n {
            for b in a + 1..n {
                let bracket = self.lie_bracket(&fields[a], &fields[b])?;
                let del = JetPoly::bracket(self.alg, &rho[a], &fields[b])?
                    .minus(&JetPoly::bracket(self.alg, &rho[b], &fields[a])?)?;
                for c in 0..n {
                    let direct = self
                        .hat_nabla(upsilon, &inner[b][c], &fields[a])?
                        .minus(&self.hat_nabla(upsilon, &inner[a][c], &fields[b])?)?
                        .minus(&self.hat_nabla(upsilon, &fields[c], &bracket)?)?;
                    let via = JetPoly::act(self.alg, &del, &fields[c])?;
                    let ord = direct.order().min(via.order());
                    compared_order = compared_order.min(ord);
                    let (direct, via) = (direct.truncated(ord), via.truncated(ord));
                    for (m, key, _) in direct.minus(&via)?.terms() {
                        mismatches.push(CurvatureMismatch {
                            fields: [a, b, c],
                            monomial: m.clone(),
                            key: key.clone(),
                            direct: direct.get(m, key),
                            via_rho: via.get(m, key),
                        });
                    }
                }
            }
        }
        Ok(CurvatureCheck {
            compared_order,
            mismatches,
        })
    }

    /// `∇̂T = sum_a Z_a (x) ∇̂_{X_a} T`, with the new slot in front.
    pub fn total_hat_nabla(&self, upsilon: &JetPoly<S>, t: &JetPoly<S>) -> Result<JetPoly<S>> {
        let mut slots = vec![Slot::Plus];
        slots.extend_from_slice(t.slots());
        let mut out: Option<JetPoly<S>> = None;
        for a in 0..self.n() {
            let mut da = t.derivative(a)?;
            if !upsilon.is_zero() {
                let corr = JetPoly::act(self.alg, &self.connection_term(upsilon, &self.coordinate_field(a))?, t)?;
                da = da.plus(&corr)?;
            }
            let term = da.prepend(Slot::Plus, self.frame.z(a));
            out = Some(match out {
                Some(o) => o.plus(&term)?,
                None => term,
            });
        }
        Ok(out.unwrap_or_else(|| JetPoly::zero(self.n(), t.order().saturating_sub(1), slots)))
    }

    /// `∇̂^k T (o)`. Only the `k`-jet of `T` and the `(k-1)`-jet of `Υ` enter.
    pub fn iterated_hat_nabla_at_o(&self, upsilon: &JetPoly<S>, t: &JetPoly<S>, k: usize) -> Result<FiberTensor<S>> {
        if t.order() < k {
            return Err(Error::OrderExhausted);
        }
        let mut cur = t.truncated(k);
        if k > 0 {
            let u = upsilon.truncated(k - 1);
            for _ in 0..k {
                cur = self.total_hat_nabla(&u, &cur)?;
            }
        }
        Ok(cur.value_at_origin())
    }

    /// `∇^k T (o)` for the flat baseline.
    pub fn iterated_flat_at_o(&self, t: &JetPoly<S>, k: usize) -> Result<FiberTensor<S>> {
        let zero = JetPoly::zero(self.n(), self.order, vec![Slot::Plus]);
        self.iterated_hat_nabla_at_o(&zero, t, k)
    }

    /// `R̂` as the section `sum_{a,b} Z_a (x) Z_b (x) R̂(X_a, X_b)` with values
    /// in `g_0`, from the connection form `A_a = [Υ, X_a]`:
    /// `R̂(X_a, X_b) = ∂_a A_b - ∂_b A_a + [A_a, A_b]`.
    pub fn curvature_tensor(&self, upsilon: &JetPoly<S>) -> Result<JetPoly<S>> {
        let n = self.n();
        let conn: Vec<JetPoly<S>> = (0..n)
            .map(|a| self.connection_term(upsilon, &self.coordinate_field(a)))
            .collect::<Result<_>>()?;
        let slots = vec![Slot::Plus, Slot::Plus, Slot::Zero];
        let mut out = JetPoly::zero(n, upsilon.order().saturating_sub(1), slots);
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let rab = conn[b]
                    .derivative(a)?
                    .minus(&conn[a].derivative(b)?)?
                    .plus(&JetPoly::bracket(self.alg, &conn[a], &conn[b])?)?;
                let term = rab.prepend(Slot::Plus, self.frame.z(b)).prepend(Slot::Plus, self.frame.z(a));
                out = out.plus(&term)?;
            }
        }
        Ok(out)
    }

    /// `(id (x) ∂)` on a tensor whose last two slots are `g_1 (x) g_1`
    /// (argument, value): the result ends in `g_1 (x) g_1 (x) g_0`.
    pub fn del_last_two(&self, t: &FiberTensor<S>) -> Result<FiberTensor<S>> {
        let r = t.slots.len();
        if r < 2 || t.slots[r - 2..] != [Slot::Plus, Slot::Plus] {
            return Err(Error::FiberMismatch(format!("cannot apply ∂ to {:?}", t.slots)));
        }
        let n = self.n();
        let alg = self.alg;
        let pair = |k: usize, a: usize| alg.killing(&LieVec::unit(k), self.frame.x(a));
        let mut entries: BTreeMap<Vec<usize>, S> = BTreeMap::new();
        for (key, c) in &t.entries {
            let (prefix, kx, kv) = (&key[..r - 2], key[r - 2], key[r - 1]);
            let val = LieVec::unit(kv);
            for a in 0..n {
                let pa = pair(kx, a);
                if pa.is_negligible() {
                    continue;
                }
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    // contributes c B(e_kx, X_a) [e_kv, X_b] to ∂P(X_a, X_b)
                    // and its negative to ∂P(X_b, X_a)
                    let br = alg.bracket(&val, self.frame.x(b));
                    for (g0, coef) in br.iter() {
                        let base = c.clone() * pa.clone() * coef.clone();
                        for (za, ca) in self.frame.z(a).iter() {
                            for (zb, cb) in self.frame.z(b).iter() {
                                let v = base.clone() * ca.clone() * cb.clone();
                                add_entry(&mut entries, prefix, &[za, zb, g0], v.clone());
                                add_entry(&mut entries, prefix, &[zb, za, g0], -v);
                            }
                        }
                    }
                }
            }
        }
        let mut slots = t.slots[..r - 2].to_vec();
        slots.extend([Slot::Plus, Slot::Plus, Slot::Zero]);
        Ok(FiberTensor { slots, entries })
    }

    /// The one-form `sum_b p_b Z_b` for scalar polynomials `p_b`.
    pub fn one_form(&self, coeffs: &[JetPoly<S>]) -> Result<JetPoly<S>> {
        let mut out = JetPoly::zero(self.n(), self.order, vec![Slot::Plus]);
        for (b, p) in coeffs.iter().enumerate() {
            out = out.plus(&self.constant(Slot::Plus, self.frame.z(b)).times(p)?)?;
        }
        Ok(out)
    }

    /// `df` for a scalar jet `f` of order `N + 1`.
    pub fn exact_one_form(&self, f: &JetPoly<S>) -> Result<JetPoly<S>> {
        let grads: Vec<JetPoly<S>> = (0..self.n()).map(|b| f.derivative(b)).collect::<Result<_>>()?;
        self.one_form(&grads)
    }

    /// `Υ` whose 5-jet is the mixed Lemma 2 element:
    /// `Υ = sum_{i,j} x_i^3 x_j^2 Z_i`.
    pub fn lemma2_upsilon_general(&self) -> Result<JetPoly<S>> {
        let n = self.n();
        let coeffs: Vec<JetPoly<S>> = (0..n)
            .map(|i| {
                let mut p = JetPoly::zero(n, self.order, vec![]);
                for j in 0..n {
                    p.add_term(MultiIndex::new(vec![i, i, i, j, j]), vec![], S::one());
                }
                p
            })
            .collect();
        self.one_form(&coeffs)
    }

    /// The potential `f = sum_{i<j} x_i^4 x_j^2`, of order `N + 1`.
    pub fn lemma2_potential(&self) -> JetPoly<S> {
        let n = self.n();
        let mut f = JetPoly::zero(n, self.order + 1, vec![]);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(MultiIndex::new(vec![i, i, i, i, j, j]), vec![], S::one());
            }
        }
        f
    }

    /// `Υ = df` for the potential of [`lemma2_potential`](Self::lemma2_potential).
    pub fn lemma2_upsilon_exact(&self) -> Result<JetPoly<S>> {
        self.exact_one_form(&self.lemma2_potential())
    }

    /// Pseudo-random one-form with integer coefficients in `[-3, 3]` on every
    /// monomial of degree `min_degree..=max_degree`, drawn from ChaCha8 seeded
    /// with `seed` in the order (component, monomial).
    pub fn random_upsilon(&self, seed: u64, min_degree: usize, max_degree: usize) -> Result<JetPoly<S>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n();
        let coeffs: Vec<JetPoly<S>> = (0..n)
            .map(|_| {
                let mut p = JetPoly::zero(n, self.order, vec![]);
                for d in min_degree..=max_degree.min(self.order) {
                    for m in sym_basis(d, n) {
                        let c: i64 = rng.gen_range(-3..=3);
                        p.add_term(m, vec![], S::from_i64(c));
                    }
                }
                p
            })
            .collect();
        self.one_form(&coeffs)
    }

    /// Pseudo-random vector field with coefficients in `[-3, 3]` of degree at
    /// most 2.
    pub fn random_vector_field(&self, seed: u64) -> JetPoly<S> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n();
        let mut out = JetPoly::zero(n, self.order, vec![Slot::Minus]);
        for a in 0..n {
            let mut p = JetPoly::zero(n, self.order, vec![]);
            for d in 0..=2.min(self.order) {
                for m in sym_basis(d, n) {
                    p.add_term(m, vec![], S::from_i64(rng.gen_range(-3..=3)));
                }
            }
            let term = self.coordinate_field(a).times(&p).expect("scalar jet");
            out = out.plus(&term).expect("same fiber");
        }
        out
    }

    /// Pseudo-random exact one-form `df` with `f` of degrees
    /// `min_degree + 1..=max_degree + 1`.
    pub fn random_exact_upsilon(&self, seed: u64, min_degree: usize, max_degree: usize) -> Result<JetPoly<S>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n();
        let mut f = JetPoly::zero(n, self.order + 1, vec![]);
        for d in min_degree + 1..=(max_degree + 1).min(self.order + 1) {
            for m in sym_basis(d, n) {
                let c: i64 = rng.gen_range(-3..=3);
                f.add_term(m, vec![], S::from_i64(c));
            }
        }
        self.exact_one_form(&f)
    }
}

fn check_upsilon<S: Scalar>(u: &JetPoly<S>) -> Result<()> {
    if u.slots() != [Slot::Plus] {
        return Err(Error::FiberMismatch(format!("Υ must be g_1-valued, got {:?}", u.slots())));
    }
    Ok(())
}

fn add_entry<S: Scalar>(entries: &mut BTreeMap<Vec<usize>, S>, prefix: &[usize], tail: &[usize], v: S) {
    let mut key = prefix.to_vec();
    key.extend_from_slice(tail);
    let e = entries.entry(key.clone()).or_insert_with(S::zero);
    *e = e.clone() + v;
    if e.is_negligible() {
        entries.remove(&key);
    }
}

/// Results of the jet identities used in the proof of the holonomy theorem,
/// for one `Υ` with vanishing `k`-jet.
#[derive(Clone, Debug, PartialEq)]
pub struct JetIdentities<S> {
    pub k: usize,
    /// `j^{k-1} P̂ (o) = 0`.
    pub rho_jet_vanishes: bool,
    /// `∇̂^k P̂ (o) - ∇^{k+1} Υ (o)`, nonzero entries only.
    pub rho_vs_upsilon: Vec<(Vec<usize>, S, S)>,
    /// `∇̂^k R̂ (o) - (id (x) ∂)(∇̂^k P̂ (o))`, nonzero entries only.
    pub curvature_vs_rho: Vec<(Vec<usize>, S, S)>,
}

impl<S> JetIdentities<S> {
    pub fn pass(&self) -> bool {
        self.rho_jet_vanishes && self.rho_vs_upsilon.is_empty() && self.curvature_vs_rho.is_empty()
    }
}

impl<'a, S: Scalar> ModelChart<'a, S> {
    /// Evaluates the three jet identities for `Υ` at derivative order `k`.
    pub fn jet_identities(&self, upsilon: &JetPoly<S>, k: usize) -> Result<JetIdentities<S>> {
        if self.order < k + 2 {
            return Err(Error::InvalidOrder {
                min: k + 2,
                found: self.order,
            });
        }
        let rho = self.hat_rho(upsilon, None)?;
        let rho_jet_vanishes = k == 0 || rho.jet_vanishes(k - 1);
        let nabla_rho = self.iterated_hat_nabla_at_o(upsilon, &rho, k)?;
        let nabla_up = self.iterated_flat_at_o(upsilon, k + 1)?;
        let curv = self.curvature_tensor(upsilon)?;
        let nabla_curv = self.iterated_hat_nabla_at_o(upsilon, &curv, k)?;
        let del = self.del_last_two(&nabla_rho)?;
        Ok(JetIdentities {
            k,
            rho_jet_vanishes,
            rho_vs_upsilon: nabla_rho.diff(&nabla_up),
            curvature_vs_rho: nabla_curv.diff(&del),
        })
    }
}

/// Spans the `g_0` values of `∇̂^4 R̂ (o)` over all argument slots for the
/// Lemma 2 one-form (general) or its exact variant, and compares the span
/// with [`theorem_certify`].
pub fn holonomy_span_jets<S: Scalar>(
    alg: &GradedLieAlgebra,
    exact_weyl: bool,
    order: usize,
    opts: CertifyOptions,
) -> Result<Certified<S>> {
    if order < MIN_SPAN_ORDER {
        return Err(Error::InvalidOrder {
            min: MIN_SPAN_ORDER,
            found: order,
        });
    }
    let start = Instant::now();
    let chart = ModelChart::<S>::new(alg, order)?;
    let k = SPAN_DERIVATIVES;
    let upsilon = if exact_weyl {
        chart.lemma2_upsilon_exact()?
    } else {
        chart.lemma2_upsilon_general()?
    }
    .truncated(k + 1);
    let curv = chart.curvature_tensor(&upsilon)?;
    let values = chart.iterated_hat_nabla_at_o(&upsilon, &curv, k)?;

    let args = values.slots.len() - 1;
    let mut grouped: BTreeMap<Vec<usize>, LieVec<S>> = BTreeMap::new();
    for (key, c) in &values.entries {
        grouped
            .entry(key[..args].to_vec())
            .or_default()
            .add_at(key[args], c.clone());
    }
    let (target, space) = if exact_weyl {
        (Target::G0ss, alg.semisimple_part::<S>())
    } else {
        (Target::G0, alg.zero_part::<S>())
    };
    let cfg = SpanConfig {
        target: opts.early_exit.then_some(space.dim()),
        parallel: opts.parallel,
        ..SpanConfig::default()
    };
    let gens: Vec<(Vec<usize>, LieVec<S>)> = grouped.into_iter().collect();
    let tracker = span_generators(alg.dim(), gens, |(_, v)| (!v.is_zero()).then(|| v.clone()), cfg);

    let algebraic = theorem_certify::<S>(alg, exact_weyl, opts).certificate.achieved_dim;
    let contained = tracker.accepted().iter().all(|(_, v)| space.contains(v));
    let witnesses = tracker
        .witnesses()
        .map(|(key, _)| {
            let names: Vec<String> = key.iter().map(|&i| alg.basis_name(i)).collect();
            format!("R4({})", names.join(","))
        })
        .collect();
    let mut certificate = Certificate {
        check: if exact_weyl { "jets-exact" } else { "jets-general" }.to_string(),
        target,
        target_dim: space.dim(),
        achieved_dim: tracker.dim(),
        contained,
        witnesses,
        generators_consumed: tracker.consumed(),
        cross_check: Some(algebraic),
        exact: S::EXACT,
        pass: false,
        elapsed_us: 0,
    };
    certificate.pass = contained && certificate.achieved_dim == certificate.target_dim && algebraic == certificate.achieved_dim;
    certificate.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(Certified {
        certificate,
        span: tracker.subspace().clone(),
    })
}

#[cfg(test)]
mod tests;
