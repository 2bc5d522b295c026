//! End-to-end experiments: the W-state case, beta sweeps, the weight-factor grid,
//! and randomized audits of the polygamy bounds.
//!
//! Audit contract: estimated pairwise values come from the concave-roof
//! optimizer and are lower bounds on the true assisted entanglement, so a
//! bound built from them is below the true bound. A passing check therefore
//! certifies the inequality for the sampled state. A failing check on
//! estimated data is only ever reported as inconclusive.

mod csv;
mod experiments;
mod random;

pub use csv::{format_number, write_audit_csv, write_sweep_csv, write_tangle_csv};
pub use experiments::{beta_grid, beta_sweep, lemma_grid_audit, wstate_case, SweepRow, SweepSource, W_LHS, W_PAIR_EOA};
pub use random::{
    audit_state, audit_tangle_state, random_audit, tangle_audit, AuditConfig, AuditOutcome, AuditRecord,
    AuditSummary, GlobalState, TangleOutcome, TangleRecord, ESCALATION_FACTOR, TANGLE_TOLERANCE,
};
