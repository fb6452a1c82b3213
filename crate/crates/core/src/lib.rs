//! Exact certificates for the holonomy of Weyl connections on
//! |1|-graded geometries.
//!
//! The crate builds the complex and split-real |1|-graded simple Lie
//! algebras `g = g_-1 ⊕ g_0 ⊕ g_1` from their root systems and certifies over
//! the rationals that the curvature derivatives of deformed Weyl connections
//! span `g_0` (or `g_0^ss` for exact Weyl structures):
//!
//! - [`rootsystem`] and [`gradedlie`] construct the algebras,
//! - [`multitensor`] and [`holonomy`] certify the algebraic lemmas,
//! - [`jetweyl`] redoes the computation on jets of connections at the base
//!   point of the flat model.
//!
//! Every computation is generic over [`Scalar`]; certificates are only
//! issued for the exact [`Rational`] instantiation.

pub mod catalog;
pub mod error;
pub mod gradedlie;
pub mod holonomy;
pub mod jetweyl;
pub mod linalg;
pub mod multitensor;
pub mod rootsystem;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use gradedlie::{build_algebra, DualFrame, GradedLieAlgebra, LieVec};
pub use holonomy::{
    lemma1_certify, lemma2_certify, theorem_certify, Certificate, Certified, CertifyOptions, Lemma2Options, Target,
};
pub use jetweyl::{holonomy_span_jets, JetPoly, ModelChart};
pub use linalg::{SparseVec, Subspace};
pub use rootsystem::{build_root_system, valid_one_gradings, RootSystem, Series, SeriesLabel};
pub use scalar::{Rational, Scalar};

/// Elements of `g` with exact coefficients.
pub type LieVecQ = LieVec<Rational>;
/// Subspaces of `g` with exact coefficients.
pub type SubspaceQ = Subspace<Rational>;
/// Exact certificate together with its span.
pub type CertifiedQ = Certified<Rational>;
/// Exact jets.
pub type JetPolyQ = JetPoly<Rational>;
/// Double-precision elements of `g`, for profiling.
pub type LieVecF64 = LieVec<f64>;
/// Single-precision elements of `g`, for profiling.
pub type LieVecF32 = LieVec<f32>;

/// Builds the algebra for `series`, `rank` and the 1-based `node`.
pub fn algebra(series: Series, rank: usize, node: usize) -> Result<GradedLieAlgebra> {
    let label = SeriesLabel::new(series, rank)?;
    build_algebra(&build_root_system(label)?, node)
}
