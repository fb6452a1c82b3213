//! Sparse vectors, reduced row-echelon subspaces and small dense solvers.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Sparse coefficient vector indexed by basis position. Zero entries are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct SparseVec<S> {
    entries: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for SparseVec<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: fmt::Debug> fmt::Debug for SparseVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl<S: Scalar> SparseVec<S> {
    pub fn zero() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(index: usize) -> Self {
        Self::basis(index, S::one())
    }

    pub fn basis(index: usize, coeff: S) -> Self {
        let mut v = Self::zero();
        v.set(index, coeff);
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, S)>>(pairs: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in pairs {
            v.add_at(i, c);
        }
        v
    }

    pub fn from_dense(values: &[S]) -> Self {
        Self::from_pairs(values.iter().cloned().enumerate())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: usize) -> S {
        self.entries.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn get_ref(&self, index: usize) -> Option<&S> {
        self.entries.get(&index)
    }

    pub fn set(&mut self, index: usize, coeff: S) {
        if coeff.is_negligible() {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, coeff);
        }
    }

    pub fn add_at(&mut self, index: usize, coeff: S) {
        if coeff.is_negligible() {
            return;
        }
        match self.entries.get_mut(&index) {
            Some(old) => {
                let sum = old.clone() + coeff;
                if sum.is_negligible() {
                    self.entries.remove(&index);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.entries.insert(index, coeff);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Smallest stored index.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_negligible() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, c.clone() * x.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        if c.is_negligible() {
            return Self::zero();
        }
        Self::from_pairs(self.iter().map(|(i, x)| (i, x.clone() * c.clone())))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn negated(&self) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (i, -x.clone())))
    }

    /// Keep only the entries selected by `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| keep(**i))
                .map(|(i, c)| (*i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (i, c) in self.iter() {
            out[i] = c.clone();
        }
        out
    }
}

/// A linear subspace held as a reduced row-echelon basis.
///
/// Rows are sorted by pivot, every pivot entry is one and every other row is
/// zero in that column. Two subspaces are equal iff their row lists are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<SparseVec<S>>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn spanned_by<'a, I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a SparseVec<S>>,
    {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn rows(&self) -> &[SparseVec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after elimination against the rows.
    pub fn reduce(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut r = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            if let Some(c) = r.get_ref(*p) {
                let c = -c.clone();
                r.add_scaled(row, &c);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns the new pivot if the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<S>) -> Option<usize> {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, mut r: SparseVec<S>) -> Option<usize> {
        // Floats pivot on the largest entry; the RREF invariant only needs
        // every row to vanish at the other rows' pivots.
        let pivot = if S::EXACT {
            r.leading()?
        } else {
            r.iter()
                .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
                .map(|(i, _)| i)?
        };
        debug_assert!(pivot < self.ambient, "index {pivot} outside ambient {}", self.ambient);
        let inv = S::one() / r.get(pivot);
        r = r.scaled(&inv);
        r.set(pivot, S::one());
        for row in &mut self.rows {
            if let Some(c) = row.get_ref(pivot) {
                let c = -c.clone();
                row.add_scaled(&r, &c);
                row.set(pivot, S::zero());
            }
        }
        let pos = self.pivots.partition_point(|p| *p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, r);
        Some(pivot)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn merge(&mut self, other: &Self) {
        for r in &other.rows {
            self.insert(r);
        }
    }
}

/// Solves `a x = b` for square `a`; `None` if singular.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    eliminate(&mut aug, n)?;
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix; `None` if singular.
pub fn invert<S: Scalar>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    eliminate(&mut aug, n)?;
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

// Gauss-Jordan on the first `n` columns of a square-plus-augmented matrix.
fn eliminate<S: Scalar>(m: &mut [Vec<S>], n: usize) -> Option<()> {
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_negligible())
            .max_by(|&a, &b| m[a][col].magnitude().total_cmp(&m[b][col].magnitude()))?;
        m.swap(col, pivot);
        let inv = S::one() / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let prow = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_negligible() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
    }
    Some(())
}

/// Rank of a dense matrix given by rows.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let ambient = rows.first().map_or(0, Vec::len);
    let mut s = Subspace::new(ambient);
    for r in rows {
        s.insert(&SparseVec::from_dense(r));
    }
    s.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use proptest::prelude::*;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    #[test]
    fn sparse_drops_zeros() {
        let mut v = SparseVec::<Rational>::unit(3);
        v.add_at(3, r(-1));
        assert!(v.is_zero());
        v.set(2, r(0));
        assert_eq!(v.nnz(), 0);
    }

    #[test]
    fn subspace_rref_and_membership() {
        let mut s = Subspace::<Rational>::new(3);
        assert!(s.insert(&SparseVec::from_dense(&[r(1), r(2), r(3)])).is_some());
        assert!(s.insert(&SparseVec::from_dense(&[r(2), r(4), r(6)])).is_none());
        assert!(s.insert(&SparseVec::from_dense(&[r(0), r(1), r(1)])).is_some());
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.rows()[0], SparseVec::from_dense(&[r(1), r(0), r(1)]));
        assert!(s.contains(&SparseVec::from_dense(&[r(1), r(3), r(4)])));
        assert!(!s.contains(&SparseVec::unit(2)));
    }

    #[test]
    fn inverse_and_solve() {
        let a = vec![vec![r(2), r(-1)], vec![r(-1), r(2)]];
        let inv = invert(&a).unwrap();
        assert_eq!(inv, vec![vec![q(2, 3), q(1, 3)], vec![q(1, 3), q(2, 3)]]);
        let x = solve(&a, &[r(1), r(0)]).unwrap();
        assert_eq!(x, vec![q(2, 3), q(1, 3)]);
        assert!(invert(&[vec![r(1), r(2)], vec![r(2), r(4)]]).is_none());
    }

    proptest! {
        #[test]
        fn insertion_order_does_not_change_span(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 1..8),
            seed in 0u64..1000,
        ) {
            let vecs: Vec<SparseVec<Rational>> =
                rows.iter().map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(i, x)| (i, Rational::from_i64(*x))))).collect();
            let forward = Subspace::spanned_by(5, &vecs);
            let mut shuffled = vecs.clone();
            let len = shuffled.len();
            for i in 0..len {
                let j = ((seed as usize).wrapping_mul(31).wrapping_add(i * 17)) % len;
                shuffled.swap(i, j);
            }
            let back = Subspace::spanned_by(5, &shuffled);
            prop_assert_eq!(forward, back);
        }
    }
}
