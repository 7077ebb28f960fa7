//! Symbolic and numerical laboratory for the compact quantum groups SU_q(2), its
//! crossed product G_q^θ by a phase automorphism, and the noncommutative torus T_θ.
//!
//! * [`algebra`] — exact normal-form arithmetic, Hopf structure, Haar state,
//!   corepresentations and finite-dimensional representations.
//! * [`rational_fn`], [`laurent`], [`scalar`] — the exact scalar tower.
//! * [`corpus`] — deterministic monomial sets and seeded random elements.
//! * [`replab`], [`linalg`] — truncated Hilbert-space representations, operator norms,
//!   spectra and the half-circle separation experiment.
//! * [`crossed`] — torus models, the shift decomposition and the block-matrix form of
//!   the crossed product, with norm comparisons across models.
//! * [`fusion`] — fusion rules and the local-finiteness closure check.
//! * [`report`] — the canonical, digest-stamped experiment report.

pub mod algebra;
pub mod corpus;
pub mod crossed;
pub mod error;
pub mod fusion;
pub mod laurent;
pub mod linalg;
mod print;
pub mod rational_fn;
pub mod replab;
pub mod report;
pub mod scalar;

pub use algebra::{Algebra, AlgebraError, Element, Generator, Monomial, TensorElement};
pub use error::LabError;
pub use laurent::LaurentCoefficient;
pub use rational_fn::{Poly, RationalValue};
pub use report::Report;
pub use scalar::{GaussRat, Rational};
