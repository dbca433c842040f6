//! Exact computational workbench for polynomial identities of
//! finite-dimensional algebras carrying gradings or generalized actions of an
//! associative unital algebra.
//!
//! Everything numerical is exact: the base field is the rationals with
//! arbitrary-precision arithmetic, identity checking and codimension counts
//! are ranks of exactly eliminated matrices, and the only floating-point
//! values are presentation-layer quantities (growth-rate surrogates) clearly
//! marked as such.
//!
//! Module map:
//!
//! * [`exactlin`] — rationals, sparse matrices, deterministic elimination.
//! * [`algebra`] — finite-dimensional algebras, gradings, generalized
//!   actions, and the simplicity test via the enveloping operator algebra.
//! * [`freealg`] — free nonassociative decorated polynomials: parsing,
//!   substitution, identity checks (brute-force and generic-element).
//! * [`codim`] — multilinear evaluation matrices and codimension sequences,
//!   with the independent graded/action cross-check.
//! * [`symfunc`] — partitions, characters, Young symmetrizers, cocharacter
//!   reports with two independent multiplicity computations.
//! * [`exponent`] — growth-rate surrogates and exact bound checks.
//! * [`document`] — the JSON interchange schema for algebras.
//! * [`catalog`] — built-in example algebras used in tests and reports.

pub mod algebra;
pub mod catalog;
pub mod codim;
pub mod document;
pub mod error;
pub mod exactlin;
pub mod exponent;
pub mod freealg;
pub mod symfunc;

pub use algebra::{Algebra, GeneralizedHAction, Grading, SimplicityVerdict};
pub use error::{Error, Result};
pub use exactlin::{Matrix, RankMode, Rational};

/// Tool version stamped into report provenance blocks.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
