use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedlie::{GradedLieAlgebra, LieVec};
use crate::multitensor::MultiIndex;
use crate::scalar::Scalar;

/// One tensor factor of a fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    /// `g_-1`, tangent vectors.
    Minus,
    /// `g_0`, endomorphisms.
    Zero,
    /// `g_1`, cotangent vectors.
    Plus,
}

impl Slot {
    pub fn grade(self) -> i8 {
        match self {
            Slot::Minus => -1,
            Slot::Zero => 0,
            Slot::Plus => 1,
        }
    }

    pub fn from_grade(g: i8) -> Option<Self> {
        match g {
            -1 => Some(Slot::Minus),
            0 => Some(Slot::Zero),
            1 => Some(Slot::Plus),
            _ => None,
        }
    }
}

/// Value of a jet at the origin: a tensor over `g` basis indices.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberTensor<S> {
    pub slots: Vec<Slot>,
    pub entries: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> FiberTensor<S> {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries where `self` and `other` differ, as `(key, self, other)`.
    pub fn diff(&self, other: &Self) -> Vec<(Vec<usize>, S, S)> {
        let mut keys: Vec<&Vec<usize>> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let a = self.entries.get(k).cloned().unwrap_or_else(S::zero);
                let b = other.entries.get(k).cloned().unwrap_or_else(S::zero);
                (!(a.clone() - b.clone()).is_negligible()).then(|| (k.clone(), a, b))
            })
            .collect()
    }
}

/// Truncated polynomial map from `g_-1` (coordinates `x_1..x_n`) to a tensor
/// product of grade components of `g`.
///
/// The key `(M, k)` carries the coefficient of `x^M b_{k_1} (x) ... (x) b_{k_r}`
/// where `b` is the Chevalley basis. Terms of degree above `order` are unknown
/// and never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPoly<S> {
    nvars: usize,
    order: usize,
    slots: Vec<Slot>,
    coeffs: BTreeMap<(MultiIndex, Vec<usize>), S>,
}

impl<S: Scalar> JetPoly<S> {
    pub fn zero(nvars: usize, order: usize, slots: Vec<Slot>) -> Self {
        Self {
            nvars,
            order,
            slots,
            coeffs: BTreeMap::new(),
        }
    }

    /// Constant section with value `v` in the single slot `slot`.
    pub fn constant(nvars: usize, order: usize, slot: Slot, v: &LieVec<S>) -> Self {
        let mut j = Self::zero(nvars, order, vec![slot]);
        for (k, c) in v.iter() {
            j.add_term(MultiIndex::new(vec![]), vec![k], c.clone());
        }
        j
    }

    /// Scalar polynomial `c x^M`.
    pub fn scalar_monomial(nvars: usize, order: usize, m: MultiIndex, c: S) -> Self {
        let mut j = Self::zero(nvars, order, vec![]);
        j.add_term(m, vec![], c);
        j
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Vec<usize>, &S)> + '_ {
        self.coeffs.iter().map(|((m, k), c)| (m, k, c))
    }

    pub fn get(&self, m: &MultiIndex, key: &[usize]) -> S {
        self.coeffs
            .get(&(m.clone(), key.to_vec()))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Adds `c x^M b_key`; terms above the truncation order are dropped.
    pub fn add_term(&mut self, m: MultiIndex, key: Vec<usize>, c: S) {
        debug_assert_eq!(key.len(), self.slots.len());
        if m.degree() > self.order || c.is_negligible() {
            return;
        }
        let k = (m, key);
        match self.coeffs.get_mut(&k) {
            Some(e) => {
                *e = e.clone() + c;
                if e.is_negligible() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    fn same_fiber(&self, other: &Self) -> Result<()> {
        if self.slots != other.slots || self.nvars != other.nvars {
            return Err(Error::FiberMismatch(format!(
                "{:?} over {} variables vs {:?} over {}",
                self.slots, self.nvars, other.slots, other.nvars
            )));
        }
        Ok(())
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.same_fiber(other)?;
        let mut out = Self::zero(self.nvars, self.order.min(other.order), self.slots.clone());
        for ((m, k), c) in self.coeffs.iter().chain(&other.coeffs) {
            out.add_term(m.clone(), k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(&-S::one()))
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero(self.nvars, self.order, self.slots.clone());
        for ((m, k), v) in &self.coeffs {
            out.add_term(m.clone(), k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(self.nvars, order, self.slots.clone());
        for ((m, k), v) in &self.coeffs {
            out.add_term(m.clone(), k.clone(), v.clone());
        }
        out
    }

    /// Lowest degree present, or `None` for the zero jet.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|(m, _)| m.degree()).min()
    }

    /// `true` if the `k`-jet at the origin vanishes.
    pub fn jet_vanishes(&self, k: usize) -> bool {
        self.min_degree().map_or(true, |d| d > k)
    }

    /// Coordinate partial derivative `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExhausted);
        }
        let mut out = Self::zero(self.nvars, self.order - 1, self.slots.clone());
        for ((m, k), c) in &self.coeffs {
            let idx = m.indices();
            let count = idx.iter().filter(|&&j| j == i).count();
            if count == 0 {
                continue;
            }
            let pos = idx.iter().position(|&j| j == i).unwrap();
            let mut rest = idx.to_vec();
            rest.remove(pos);
            out.add_term(MultiIndex::new(rest), k.clone(), c.clone() * S::from_i64(count as i64));
        }
        Ok(out)
    }

    pub fn value_at_origin(&self) -> FiberTensor<S> {
        let entries = self
            .coeffs
            .iter()
            .filter(|((m, _), _)| m.degree() == 0)
            .map(|((_, k), c)| (k.clone(), c.clone()))
            .collect();
        FiberTensor {
            slots: self.slots.clone(),
            entries,
        }
    }

    fn product_into<F>(&self, other: &Self, slots: Vec<Slot>, mut combine: F) -> Self
    where
        F: FnMut(&[usize], &[usize], &mut dyn FnMut(Vec<usize>, S)),
    {
        let order = self.order.min(other.order);
        let mut out = Self::zero(self.nvars, order, slots);
        for ((ma, ka), ca) in &self.coeffs {
            for ((mb, kb), cb) in &other.coeffs {
                if ma.degree() + mb.degree() > order {
                    continue;
                }
                let mut idx = ma.indices().to_vec();
                idx.extend_from_slice(mb.indices());
                let m = MultiIndex::new(idx);
                let cab = ca.clone() * cb.clone();
                let mut emit = |key: Vec<usize>, c: S| out.add_term(m.clone(), key, cab.clone() * c);
                combine(ka, kb, &mut emit);
            }
        }
        out
    }

    /// Pointwise product with a scalar jet.
    pub fn times(&self, f: &Self) -> Result<Self> {
        if !f.slots.is_empty() {
            return Err(Error::FiberMismatch("times needs a scalar jet".into()));
        }
        Ok(self.product_into(f, self.slots.clone(), |ka, _, emit| emit(ka.to_vec(), S::one())))
    }

    /// Pointwise tensor product, slots of `self` first.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&other.slots);
        self.product_into(other, slots, |ka, kb, emit| {
            let mut k = ka.to_vec();
            k.extend_from_slice(kb);
            emit(k, S::one())
        })
    }

    /// Pointwise Lie bracket of two single-slot jets.
    pub fn bracket(alg: &GradedLieAlgebra, a: &Self, b: &Self) -> Result<Self> {
        let (&[sa], &[sb]) = (a.slots.as_slice(), b.slots.as_slice()) else {
            return Err(Error::FiberMismatch("bracket needs single-slot jets".into()));
        };
        let slot = Slot::from_grade(sa.grade() + sb.grade())
            .ok_or_else(|| Error::FiberMismatch(format!("[{sa:?}, {sb:?}] leaves the grading")))?;
        Ok(a.product_into(b, vec![slot], |ka, kb, emit| {
            for (k, c) in alg.structure(ka[0], kb[0]) {
                emit(vec![*k], S::from_i64(*c));
            }
        }))
    }

    /// `a • t`: the `g_0`-valued jet `a` acting on every slot of `t` as a
    /// derivation.
    pub fn act(alg: &GradedLieAlgebra, a: &Self, t: &Self) -> Result<Self> {
        if a.slots != [Slot::Zero] {
            return Err(Error::FiberMismatch(format!("acting jet has fiber {:?}", a.slots)));
        }
        Ok(a.product_into(t, t.slots.clone(), |ka, kb, emit| {
            for s in 0..kb.len() {
                for (k, c) in alg.structure(ka[0], kb[s]) {
                    let mut key = kb.to_vec();
                    key[s] = *k;
                    emit(key, S::from_i64(*c));
                }
            }
        }))
    }

    /// Pairs slot `pos` with the constant `v` through the Killing form and
    /// removes it.
    pub fn pair_slot(&self, alg: &GradedLieAlgebra, pos: usize, v: &LieVec<S>) -> Self {
        let mut slots = self.slots.clone();
        slots.remove(pos);
        let mut out = Self::zero(self.nvars, self.order, slots);
        let mut cache: HashMap<usize, S> = HashMap::new();
        for ((m, k), c) in &self.coeffs {
            let w = cache
                .entry(k[pos])
                .or_insert_with(|| alg.killing(&LieVec::unit(k[pos]), v))
                .clone();
            if w.is_negligible() {
                continue;
            }
            let mut key = k.clone();
            key.remove(pos);
            out.add_term(m.clone(), key, c.clone() * w);
        }
        out
    }

    /// Prepends a constant factor `v` in slot `slot`.
    pub fn prepend(&self, slot: Slot, v: &LieVec<S>) -> Self {
        let mut slots = vec![slot];
        slots.extend_from_slice(&self.slots);
        let mut out = Self::zero(self.nvars, self.order, slots);
        for (i, a) in v.iter() {
            for ((m, k), c) in &self.coeffs {
                let mut key = vec![i];
                key.extend_from_slice(k);
                out.add_term(m.clone(), key, c.clone() * a.clone());
            }
        }
        out
    }
}
