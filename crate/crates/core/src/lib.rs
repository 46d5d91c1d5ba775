//! Exact computational invariant theory.
//!
//! Rational and prime-field arithmetic, multivariate polynomials, group
//! actions with Reynolds operators and Molien series, first and second
//! fundamental theorem presentations for the classical groups, generation
//! certificates for graded algebras, and projective embeddings with a
//! semistability test.

pub mod classical;
pub mod embed;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod pgg;
pub mod poly;

pub use classical::{build_presentation, fft_generators, sft_relations, verify_presentation, GeneratorTable};
pub use embed::{image_equations, plucker_point, semistable_test, spec_embedding_data, EmbeddingChart, SemistabilityReport};
pub use error::{Error, Result};
pub use field::{Field, Fp, Q};
pub use group::{act, molien_series, reynolds, ClassicalGroupSpec, ClassicalKind, FiniteMatrixGroup, GroupActionSpec, InducedAction};
pub use linalg::{Matrix, SparseEchelon};
pub use pgg::{check_tpgg, min_tpgg, GradedPresentation, PggCertificate};
pub use poly::{Monomial, Polynomial, PolynomialRing};
