//! Nilpotent linearized polynomials over finite fields, and the permutations,
//! cycle structures and involutions built from them.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: the tower F_p -> F_q -> F_{q^n} with Frobenius and traces.
//! - [`linpoly`]: linearized polynomials, symbolic products, q-associates,
//!   matrices, kernels and images.
//! - [`nlp`]: nilpotency testing and the NLP families; [`family`] parses
//!   family selectors.
//! - [`perm`]: permutations `L + k` with compositional inverses and orders.
//! - [`cycles`]: cycle decompositions and the cycle-lifting checks.
//! - [`involution`] and [`sbox`]: fixed-point-free involutions and their
//!   lookup-table export.

pub mod error;
pub mod family;
pub mod gf;
pub mod involution;
pub mod linalg;
pub mod linpoly;
pub mod compiled;
pub mod cycles;
pub mod nlp;
pub mod perm;
pub mod sbox;

pub use error::{Error, Result};
pub use gf::{Field, FieldCtx, FieldElement};
pub use linpoly::{Basis, ConventionalPoly, LinearizedPoly, Subspace};
