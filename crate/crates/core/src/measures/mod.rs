//! Entanglement quantifiers and the concave-roof optimizer for assisted
//! measures (entanglement of assistance, tangle of assistance).

mod decomposition;
mod entropy;
mod roof;

pub use decomposition::{decomposition_from_isometry, random_decomposition, Decomposition, RANK_THRESHOLD};
pub use entropy::{entropy_bits, pure_entanglement, tangle_pure, von_neumann_entropy, PureMeasure};
pub use roof::{assisted_measure, Diagnostics, EoaEstimate, OptimizerOptions};
