//! Multipartite states: layouts, pure states, density matrices, fixtures
//! and seeded random sampling.

mod layout;
mod random;
mod state;

pub use layout::{SystemLayout, MAX_TOTAL_DIMENSION};
pub use random::{haar_isometry, haar_random_pure, orthonormalize_for_witness, random_mixed};
pub use state::{bell_state, w_state, DensityMatrix, PureState, STATE_TOLERANCE};
