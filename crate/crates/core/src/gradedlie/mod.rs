//! The |1|-graded simple Lie algebra `g = g_-1 + g_0 + g_1` in a Chevalley
//! basis.
//!
//! The basis is ordered as the Cartan generators `h_1..h_r`, then `e_x` for
//! every positive root `x` in root order, then `f_x = e_-x` in the same order.
//! Structure constants are integers and stored as `i64`; every operation that
//! produces coefficients is generic over [`Scalar`].
//!
//! The concrete model is the split form over the rationals. Ranks and spans
//! computed here are unchanged by extending scalars to the reals or complexes,
//! so they certify the complex rows of the classification as well.

mod chevalley;

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{invert, solve, SparseVec, Subspace};
use crate::rootsystem::{valid_one_gradings, Root, RootSystem};
use crate::scalar::Scalar;

use chevalley::{coroot_coeffs, RootConstants};

/// Element of `g`, as coefficients on the Chevalley basis.
pub type LieVec<S> = SparseVec<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Simple coroot `h_i` (0-based node).
    Cartan(usize),
    /// Root vector `e_x`; the index points into [`RootSystem::roots`].
    Root(usize),
}

#[derive(Clone)]
pub struct GradedLieAlgebra {
    rs: RootSystem,
    node: usize,
    basis: Vec<Generator>,
    grades: Vec<i8>,
    /// `[b_i, b_j]` at `table[i * dim + j]`.
    table: Vec<Vec<(usize, i64)>>,
    /// Sparse rows of the Killing Gram matrix.
    gram: Vec<Vec<(usize, i64)>>,
    by_grade: [Vec<usize>; 3],
}

impl fmt::Debug for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedLieAlgebra")
            .field("label", &self.rs.label())
            .field("node", &self.node)
            .field("dim", &self.dim())
            .finish()
    }
}

/// Builds `g` with the grading induced by crossing `node` (1-based).
pub fn build_algebra(rs: &RootSystem, node: usize) -> Result<GradedLieAlgebra> {
    let valid = valid_one_gradings(rs);
    let label = rs.label();
    if valid.is_empty() {
        return Err(Error::NoOneGrading(label.series));
    }
    if !valid.contains(&node) {
        return Err(Error::InvalidNode {
            series: label.series,
            rank: label.rank,
            node,
        });
    }

    let rank = rs.rank();
    let nroots = rs.roots().len();
    let dim = rank + nroots;
    let mut basis: Vec<Generator> = (0..rank).map(Generator::Cartan).collect();
    basis.extend((0..nroots).map(Generator::Root));
    let grades: Vec<i8> = basis
        .iter()
        .map(|g| match g {
            Generator::Cartan(_) => 0,
            Generator::Root(r) => rs.roots()[*r].grade(node) as i8,
        })
        .collect();

    let rc = RootConstants::new(rs);
    let root_at = |b: usize| -> &Root { &rs.roots()[b - rank] };
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            let entry = match (basis[i], basis[j]) {
                (Generator::Cartan(_), Generator::Cartan(_)) => Vec::new(),
                (Generator::Cartan(a), Generator::Root(_)) => {
                    let c = rs.coroot_pairing(&root_at(j).coords, a);
                    if c == 0 { Vec::new() } else { vec![(j, c)] }
                }
                (Generator::Root(_), Generator::Cartan(a)) => {
                    let c = rs.coroot_pairing(&root_at(i).coords, a);
                    if c == 0 { Vec::new() } else { vec![(i, -c)] }
                }
                (Generator::Root(_), Generator::Root(_)) => {
                    let x = &root_at(i).coords;
                    let y = &root_at(j).coords;
                    let sum: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                    if sum.iter().all(|c| *c == 0) {
                        coroot_coeffs(rs, x)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| *c != 0)
                            .collect()
                    } else if let Some(k) = rs.index_of(&sum) {
                        let n = rc.n(x, y);
                        debug_assert!(n != 0);
                        vec![(rank + k, n)]
                    } else {
                        Vec::new()
                    }
                }
            };
            table[i * dim + j] = entry;
        }
    }

    let mut by_grade: [Vec<usize>; 3] = Default::default();
    for (i, g) in grades.iter().enumerate() {
        by_grade[(*g + 1) as usize].push(i);
    }

    let mut alg = GradedLieAlgebra {
        rs: rs.clone(),
        node,
        basis,
        grades,
        table,
        gram: Vec::new(),
        by_grade,
    };
    alg.gram = alg.compute_gram();
    Ok(alg)
}

impl GradedLieAlgebra {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Crossed node (1-based).
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn grade(&self, index: usize) -> i8 {
        self.grades[index]
    }

    /// Basis indices of `g_grade`, in basis order.
    pub fn indices_of_grade(&self, grade: i8) -> &[usize] {
        &self.by_grade[(grade + 1) as usize]
    }

    pub fn dim_of_grade(&self, grade: i8) -> usize {
        self.indices_of_grade(grade).len()
    }

    /// Basis index of `e_x` for the root with index `root` in the root list.
    pub fn root_vector(&self, root: usize) -> usize {
        self.rank() + root
    }

    /// Root of a basis element, `None` for Cartan generators.
    pub fn root_of(&self, index: usize) -> Option<&Root> {
        match self.basis[index] {
            Generator::Root(r) => Some(&self.rs.roots()[r]),
            Generator::Cartan(_) => None,
        }
    }

    /// Weight of a basis element in simple-root coordinates.
    pub fn weight(&self, index: usize) -> Vec<i64> {
        self.root_of(index)
            .map(|r| r.coords.clone())
            .unwrap_or_else(|| vec![0; self.rank()])
    }

    /// Human-readable name of a basis element.
    pub fn basis_name(&self, index: usize) -> String {
        match self.basis[index] {
            Generator::Cartan(i) => format!("h{}", i + 1),
            Generator::Root(r) => {
                let root = &self.rs.roots()[r];
                let c: Vec<String> = root.coords.iter().map(|x| x.abs().to_string()).collect();
                format!("{}[{}]", if root.is_positive { "e" } else { "f" }, c.join(""))
            }
        }
    }

    /// Structure constants of `[b_i, b_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    /// Copy of the algebra with `[b_i, b_j]` shifted by `delta * b_k` (and
    /// `[b_j, b_i]` by the opposite), for negative-control runs. The Killing
    /// form is kept from the original table.
    pub fn with_corrupted_constant(&self, i: usize, j: usize, k: usize, delta: i64) -> Self {
        let mut out = self.clone();
        let dim = self.dim();
        let bump = |entry: &mut Vec<(usize, i64)>, d: i64| {
            match entry.iter_mut().find(|(idx, _)| *idx == k) {
                Some(e) => e.1 += d,
                None => entry.push((k, d)),
            }
            entry.retain(|(_, c)| *c != 0);
        };
        bump(&mut out.table[i * dim + j], delta);
        bump(&mut out.table[j * dim + i], -delta);
        out
    }

    /// `[b_i, v]` for a basis element `b_i`.
    pub fn bracket_basis<S: Scalar>(&self, i: usize, v: &LieVec<S>) -> LieVec<S> {
        let mut out = LieVec::zero();
        for (j, c) in v.iter() {
            for (k, s) in self.structure(i, j) {
                out.add_at(*k, c.clone() * S::from_i64(*s));
            }
        }
        out
    }

    pub fn bracket<S: Scalar>(&self, a: &LieVec<S>, b: &LieVec<S>) -> LieVec<S> {
        let mut out = LieVec::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let st = self.structure(i, j);
                if st.is_empty() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, s) in st {
                    out.add_at(*k, xy.clone() * S::from_i64(*s));
                }
            }
        }
        out
    }

    fn compute_gram(&self) -> Vec<Vec<(usize, i64)>> {
        let dim = self.dim();
        let rank = self.rank();
        let npos = self.rs.num_positive();
        // [b_i, [b_j, b_m]] has a b_m component only when weight(i) = -weight(j)
        let partner = |i: usize| -> Vec<usize> {
            match self.basis[i] {
                Generator::Cartan(_) => (0..rank).collect(),
                Generator::Root(r) => {
                    let opp = if r < npos { r + npos } else { r - npos };
                    vec![rank + opp]
                }
            }
        };
        (0..dim)
            .map(|i| {
                partner(i)
                    .into_iter()
                    .filter_map(|j| {
                        let mut tr = 0i64;
                        for m in 0..dim {
                            for (k, c) in self.structure(j, m) {
                                for (l, d) in self.structure(i, *k) {
                                    if *l == m {
                                        tr += c * d;
                                    }
                                }
                            }
                        }
                        (tr != 0).then_some((j, tr))
                    })
                    .collect()
            })
            .collect()
    }

    /// Killing form on basis elements.
    pub fn killing_basis(&self, i: usize, j: usize) -> i64 {
        self.gram[i]
            .iter()
            .find(|(k, _)| *k == j)
            .map_or(0, |(_, c)| *c)
    }

    /// `trace(ad a . ad b)`.
    pub fn killing<S: Scalar>(&self, a: &LieVec<S>, b: &LieVec<S>) -> S {
        let mut total = S::zero();
        for (i, x) in a.iter() {
            for (j, k) in &self.gram[i] {
                if let Some(y) = b.get_ref(*j) {
                    total = total + x.clone() * y.clone() * S::from_i64(*k);
                }
            }
        }
        total
    }

    /// The grading element `E`: the Cartan element with `[E, x] = grade(x) x`.
    pub fn grading_element<S: Scalar>(&self) -> LieVec<S> {
        let r = self.rank();
        let a = self.rs.cartan();
        // alpha_j(sum_i c_i h_i) = sum_i c_i A_ij = delta_{j,node}
        let m: Vec<Vec<S>> = (0..r)
            .map(|j| (0..r).map(|i| S::from_i64(a[i][j])).collect())
            .collect();
        let rhs: Vec<S> = (0..r)
            .map(|j| if j + 1 == self.node { S::one() } else { S::zero() })
            .collect();
        let c = solve(&m, &rhs).expect("Cartan matrix is invertible");
        LieVec::from_pairs(c.into_iter().enumerate())
    }

    /// `true` if every component of `v` lies in `g_grade` (the zero vector
    /// lies in every grade).
    pub fn is_in_grade<S: Scalar>(&self, v: &LieVec<S>, grade: i8) -> bool {
        v.indices().all(|i| self.grades[i] == grade)
    }

    /// Projection of `v` onto `g_grade`.
    pub fn grade_component<S: Scalar>(&self, v: &LieVec<S>, grade: i8) -> LieVec<S> {
        v.filtered(|i| self.grades[i] == grade)
    }

    /// `[g_0, g_0]`, the semisimple part of `g_0`.
    pub fn semisimple_part<S: Scalar>(&self) -> Subspace<S> {
        let g0 = self.indices_of_grade(0);
        let mut s = Subspace::new(self.dim());
        for (a, &i) in g0.iter().enumerate() {
            for &j in &g0[a + 1..] {
                let v = self.bracket_basis(i, &LieVec::<S>::unit(j));
                s.insert(&v);
            }
        }
        s
    }

    /// `g_0` itself as a subspace.
    pub fn zero_part<S: Scalar>(&self) -> Subspace<S> {
        let vecs: Vec<LieVec<S>> = self.indices_of_grade(0).iter().map(|&i| LieVec::unit(i)).collect();
        Subspace::spanned_by(self.dim(), &vecs)
    }

    /// Simple ideals of the semisimple part, one per connected component of
    /// the Dynkin diagram with the crossed node removed.
    pub fn simple_ideals<S: Scalar>(&self) -> Vec<SimpleIdeal<S>> {
        let rank = self.rank();
        let mut comp = vec![usize::MAX; rank];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 1..=rank {
            if start == self.node || comp[start - 1] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![start];
            comp[start - 1] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.rs.neighbours(v) {
                    if w != self.node && comp[w - 1] == usize::MAX {
                        comp[w - 1] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }

        groups
            .into_iter()
            .map(|nodes| {
                let inside = |coords: &[i64]| {
                    coords
                        .iter()
                        .enumerate()
                        .all(|(i, c)| *c == 0 || nodes.contains(&(i + 1)))
                };
                let mut vecs: Vec<LieVec<S>> = nodes.iter().map(|n| LieVec::unit(n - 1)).collect();
                for (r, root) in self.rs.roots().iter().enumerate() {
                    if inside(&root.coords) {
                        vecs.push(LieVec::unit(self.root_vector(r)));
                    }
                }
                SimpleIdeal {
                    nodes,
                    subspace: Subspace::spanned_by(self.dim(), &vecs),
                }
            })
            .collect()
    }

    /// Action of `a` in `g_0` on `v`: the adjoint action, which preserves grades.
    pub fn act_bullet<S: Scalar>(&self, a: &LieVec<S>, v: &LieVec<S>) -> Result<LieVec<S>> {
        if !self.is_in_grade(a, 0) {
            return Err(Error::Grade("act_bullet needs a grade-0 operator".into()));
        }
        Ok(self.bracket(a, v))
    }

    /// Smallest `g_0`-invariant subspace containing `v`.
    pub fn g0_orbit_span<S: Scalar>(&self, v: &LieVec<S>) -> Subspace<S> {
        let mut s = Subspace::new(self.dim());
        s.insert(v);
        let mut frontier = vec![v.clone()];
        while let Some(w) = frontier.pop() {
            for &i in self.indices_of_grade(0) {
                let u = self.bracket_basis(i, &w);
                if s.insert(&u).is_some() {
                    frontier.push(u);
                }
            }
        }
        s
    }

    /// Basis of `g_1` dual to `basis_x` under the Killing form.
    pub fn dual_basis_g1<S: Scalar>(&self, basis_x: &[LieVec<S>]) -> Result<Vec<LieVec<S>>> {
        let plus = self.indices_of_grade(1);
        let n = plus.len();
        if basis_x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis_x.len(),
            });
        }
        if let Some(bad) = basis_x.iter().find(|x| !self.is_in_grade(x, -1)) {
            return Err(Error::Grade(format!("{bad:?} is not in g_-1")));
        }
        let m: Vec<Vec<S>> = plus
            .iter()
            .map(|&g| {
                let e = LieVec::unit(g);
                basis_x.iter().map(|x| self.killing(&e, x)).collect()
            })
            .collect();
        let c = invert(&m).ok_or(Error::SingularPairing)?;
        Ok(c
            .into_iter()
            .map(|row| LieVec::from_pairs(plus.iter().copied().zip(row)))
            .collect())
    }
}

/// One simple ideal of the semisimple part of `g_0`.
#[derive(Clone, Debug)]
pub struct SimpleIdeal<S> {
    /// Dynkin nodes (1-based) of the component.
    pub nodes: Vec<usize>,
    pub subspace: Subspace<S>,
}

/// A basis `X_a` of `g_-1` together with its Killing-dual basis `Z_a` of `g_1`.
#[derive(Clone, Debug)]
pub struct DualFrame<S> {
    x: Vec<LieVec<S>>,
    z: Vec<LieVec<S>>,
}

impl<S: Scalar> DualFrame<S> {
    /// Frame of negative root vectors `X_a = f_{gamma_a}`, in root order.
    pub fn root_frame(alg: &GradedLieAlgebra) -> Self {
        let x: Vec<LieVec<S>> = alg.indices_of_grade(-1).iter().map(|&i| LieVec::unit(i)).collect();
        Self::from_basis(alg, x).expect("root vectors pair perfectly")
    }

    pub fn from_basis(alg: &GradedLieAlgebra, x: Vec<LieVec<S>>) -> Result<Self> {
        let z = alg.dual_basis_g1(&x)?;
        Ok(Self { x, z })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self, a: usize) -> &LieVec<S> {
        &self.x[a]
    }

    pub fn z(&self, a: usize) -> &LieVec<S> {
        &self.z[a]
    }

    pub fn xs(&self) -> &[LieVec<S>] {
        &self.x
    }

    pub fn zs(&self) -> &[LieVec<S>] {
        &self.z
    }

    /// Coordinates of `v` in `g_-1` with respect to `X`: `B(Z_a, v)`.
    pub fn coords_minus(&self, alg: &GradedLieAlgebra, v: &LieVec<S>) -> Vec<S> {
        self.z.iter().map(|z| alg.killing(z, v)).collect()
    }

    /// Coordinates of `w` in `g_1` with respect to `Z`: `B(w, X_a)`.
    pub fn coords_plus(&self, alg: &GradedLieAlgebra, w: &LieVec<S>) -> Vec<S> {
        self.x.iter().map(|x| alg.killing(w, x)).collect()
    }
}

#[cfg(test)]
mod tests;
