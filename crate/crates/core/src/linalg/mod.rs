//! Dense complex linear algebra for small multipartite systems.
//!
//! Subsystems are laid out big-endian: subsystem 0 is the most significant
//! tensor factor, so the basis index of `|b0 b1 ... b(n-1)>` is the
//! mixed-radix number `b0 b1 ... b(n-1)` over the subsystem dimensions.

mod eigen;
mod matrix;
mod partial;

pub use eigen::{hermitian_eig, HermitianEigen, JACOBI_MAX_SWEEPS, JACOBI_TOLERANCE};
pub use matrix::{tensor_product, tensor_product_capped, ComplexMatrix, DEFAULT_MAX_DIMENSION};
pub use num_complex::Complex64;
pub use partial::{partial_trace, reduce_pure, trace_out};

/// Inputs closer than this (Frobenius) to Hermitian are symmetrized silently.
pub const HERMITIAN_DRIFT_TOLERANCE: f64 = 1e-8;
