//! Induced invariants of unitary-group homomorphisms between finite-dimensional
//! C*-algebras.
//!
//! A homomorphism `θ: U(A) → U(B)` is written in a small composition language
//! ([`hom`]). From it the crate extracts the Stone generator map `S_θ`, the
//! induced affine map `Λ_θ` on trace spaces, the induced `K₀` map, positivity
//! and unitality verdicts, the dual simplex map, the general-linear variant
//! `G_θ`, and verifies them against de la Harpe–Skandalis pre-determinants of
//! paths ([`path`]).

pub mod algebra;
pub mod error;
pub mod hom;
pub mod induced;
pub mod path;
pub mod report;

pub use error::{Error, Result};
