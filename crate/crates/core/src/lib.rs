//! Entanglement of assistance and weighted polygamy bounds for small
//! multipartite quantum states.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   Kronecker products and partial traces.
//! - [`states`]: subsystem layouts, pure and mixed states, fixtures and
//!   seeded Haar-random sampling.
//! - [`measures`]: von Neumann entropy, tangle and the concave-roof
//!   optimizer that estimates assisted measures.
//! - [`bounds`]: Hamming-weight machinery, the scalar inequality behind the
//!   weighted bounds, condition predicates and the competing upper bounds.
//! - [`audit`]: the W-state case, beta sweeps, grid audits and randomized
//!   audits with CSV emission.

#![forbid(unsafe_code)]

pub mod audit;
pub mod bounds;
mod error;
pub mod linalg;
pub mod measures;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
