use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{evaluate_bounds, BoundReport, EntanglementProfile, EvalOptions, ProfileSource, Verdict};
use crate::measures::{assisted_measure, pure_entanglement, tangle_pure, OptimizerOptions, PureMeasure};
use crate::rng::derive_seed;
use crate::states::{haar_random_pure, random_mixed, DensityMatrix, PureState, SystemLayout};
use crate::{Error, Result};

/// Restart multiplier for the single retry of a failed estimated check.
pub const ESCALATION_FACTOR: usize = 4;
/// Slack for the tangle check `tau(A|BC) <= tau_a(AB) + tau_a(AC)`.
pub const TANGLE_TOLERANCE: f64 = 1e-3;

const STATE_STREAM: u64 = 0;
const OPTIMIZER_STREAM: u64 = 1;

/// Global states sampled by [`random_audit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalState {
    /// Haar-random pure states; the left-hand side is exact.
    Pure,
    /// Marginals of Haar-random pure states with an ancilla of this
    /// dimension. The left-hand side is then itself an optimizer lower
    /// bound, so a verified trial is only a consistency check.
    Mixed { ancilla_dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    /// Subsystem 0 is `A`; subsystems `1..` are `B0, B1, ...`.
    pub layout: SystemLayout,
    pub trials: usize,
    pub betas: Vec<f64>,
    pub optimizer: OptimizerOptions,
    pub master_seed: u64,
    pub global: GlobalState,
}

impl AuditConfig {
    pub fn new(layout: SystemLayout, trials: usize, betas: Vec<f64>, master_seed: u64) -> Self {
        Self {
            layout,
            trials,
            betas,
            optimizer: OptimizerOptions::default(),
            master_seed,
            global: GlobalState::Pure,
        }
    }
}

/// One audited state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    pub trial: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub lhs: f64,
    /// Estimated `E_a(A|Bj)` in subsystem order.
    pub profile: EntanglementProfile,
    /// One report per audited beta, in configuration order.
    pub reports: Vec<BoundReport>,
    pub escalated: bool,
    /// Wall-clock time; excluded from every deterministic output.
    pub runtime_ms: u128,
}

/// Verdict counts over a set of trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub beta: Option<f64>,
    pub trials: usize,
    pub verified: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
    pub violated: usize,
    /// Largest violation of the arithmetic chain checked by the audit
    /// (`(sum E_j)^beta - thm1 bound` where its condition holds, or
    /// `lhs - rhs` for tangle audits); `None` when nothing was checked.
    pub max_chain_residual: Option<f64>,
    pub escalations: usize,
}

impl AuditSummary {
    fn empty(beta: Option<f64>) -> Self {
        Self {
            beta,
            trials: 0,
            verified: 0,
            inconclusive: 0,
            not_applicable: 0,
            violated: 0,
            max_chain_residual: None,
            escalations: 0,
        }
    }

    fn count(&mut self, verdict: Verdict, residual: Option<f64>, escalated: bool) {
        self.trials += 1;
        match verdict {
            Verdict::Verified => self.verified += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
            Verdict::Violated => self.violated += 1,
        }
        if let Some(r) = residual {
            self.max_chain_residual = Some(self.max_chain_residual.map_or(r, |m: f64| m.max(r)));
        }
        if escalated {
            self.escalations += 1;
        }
    }

    pub fn verified_fraction(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.verified as f64 / self.trials as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditOutcome {
    pub records: Vec<AuditRecord>,
    /// One summary per audited beta, in configuration order.
    pub summaries: Vec<AuditSummary>,
}

fn check_betas(betas: &[f64]) -> Result<()> {
    if let Some(b) = betas.iter().find(|b| !(0.0..=1.0).contains(*b)) {
        return Err(Error::Domain(format!("beta = {b} is outside [0, 1]")));
    }
    Ok(())
}

fn estimate_profile(rho: &DensityMatrix, opts: &OptimizerOptions) -> Result<Vec<f64>> {
    (1..rho.layout().len())
        .map(|j| {
            let pair = crate::linalg::partial_trace(rho, &[0, j])?;
            Ok(assisted_measure(&pair, PureMeasure::Entropy, opts)?.value)
        })
        .collect()
}

fn reports_for(lhs: f64, profile: &EntanglementProfile, betas: &[f64]) -> Result<Vec<BoundReport>> {
    betas
        .iter()
        .map(|&b| evaluate_bounds(lhs, profile, b, &EvalOptions::default()))
        .collect()
}

fn all_verified(reports: &[BoundReport]) -> bool {
    reports.iter().all(|r| r.verdict == Verdict::Verified)
}

fn escalated(opts: &OptimizerOptions) -> OptimizerOptions {
    opts.with_restarts(opts.restarts * ESCALATION_FACTOR)
}

/// Audits one state `rho` on `A|B0...B(N-1)` with a known (or estimated)
/// left-hand side `E_a(A|B0...)`.
fn audit_density(
    rho: &DensityMatrix,
    lhs: f64,
    betas: &[f64],
    opts: &OptimizerOptions,
) -> Result<(EntanglementProfile, Vec<BoundReport>, bool)> {
    let profile = EntanglementProfile::new(estimate_profile(rho, opts)?, ProfileSource::Estimated)?;
    let reports = reports_for(lhs, &profile, betas)?;
    if all_verified(&reports) {
        return Ok((profile, reports, false));
    }
    // Same seed with more restarts explores a superset of the first attempt.
    let profile = EntanglementProfile::new(estimate_profile(rho, &escalated(opts))?, ProfileSource::Estimated)?;
    let reports = reports_for(lhs, &profile, betas)?;
    Ok((profile, reports, true))
}

/// Audits a single pure state: exact `S(rho_A)` against the bounds built
/// from estimated pairwise assisted entanglements.
pub fn audit_state(psi: &PureState, betas: &[f64], opts: &OptimizerOptions) -> Result<AuditRecord> {
    check_betas(betas)?;
    if psi.layout().len() < 2 {
        return Err(Error::Layout("audits need subsystem A and at least one B".into()));
    }
    let start = Instant::now();
    let lhs = pure_entanglement(psi, &[0])?;
    let (profile, reports, escalated) = audit_density(&psi.density(), lhs, betas, opts)?;
    Ok(AuditRecord {
        trial: 0,
        seed: opts.seed,
        dims: psi.layout().dims().to_vec(),
        lhs,
        profile,
        reports,
        escalated,
        runtime_ms: start.elapsed().as_millis(),
    })
}

fn audit_trial(config: &AuditConfig, trial: usize) -> Result<AuditRecord> {
    let seed = derive_seed(config.master_seed, trial as u64);
    let state_seed = derive_seed(seed, STATE_STREAM);
    let opts = config.optimizer.with_seed(derive_seed(seed, OPTIMIZER_STREAM));
    let start = Instant::now();
    let mut record = match config.global {
        GlobalState::Pure => audit_state(&haar_random_pure(&config.layout, state_seed), &config.betas, &opts)?,
        GlobalState::Mixed { ancilla_dim } => {
            let rho = random_mixed(&config.layout, ancilla_dim, state_seed)?;
            let lhs = assisted_measure(&rho, PureMeasure::Entropy, &opts)?.value;
            let (profile, reports, escalated) = audit_density(&rho, lhs, &config.betas, &opts)?;
            AuditRecord {
                trial,
                seed,
                dims: config.layout.dims().to_vec(),
                lhs,
                profile,
                reports,
                escalated,
                runtime_ms: 0,
            }
        }
    };
    record.trial = trial;
    record.seed = seed;
    record.runtime_ms = start.elapsed().as_millis();
    Ok(record)
}

fn chain_residual(r: &BoundReport) -> Option<f64> {
    r.cond_thm1.then_some(r.sum_pow - r.bound_thm1)
}

/// Runs `config.trials` independent trials. Trial `i` draws its state and
/// optimizer streams from seeds derived from `(master_seed, i)`, so the
/// outcome does not depend on thread count or scheduling.
pub fn random_audit(config: &AuditConfig) -> Result<AuditOutcome> {
    check_betas(&config.betas)?;
    if config.layout.len() < 2 {
        return Err(Error::Layout("audits need subsystem A and at least one B".into()));
    }
    let records: Vec<AuditRecord> = (0..config.trials)
        .into_par_iter()
        .map(|i| audit_trial(config, i))
        .collect::<Result<_>>()?;

    let mut summaries: Vec<AuditSummary> = config.betas.iter().map(|&b| AuditSummary::empty(Some(b))).collect();
    for rec in &records {
        for (summary, report) in summaries.iter_mut().zip(&rec.reports) {
            summary.count(report.verdict, chain_residual(report), rec.escalated);
        }
    }
    Ok(AuditOutcome { records, summaries })
}

/// One tangle check `tau(A|BC) <= tau_a(AB) + tau_a(AC)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TangleRecord {
    pub trial: usize,
    pub seed: u64,
    pub tangle: f64,
    pub assisted_ab: f64,
    pub assisted_ac: f64,
    pub verdict: Verdict,
    pub escalated: bool,
}

impl TangleRecord {
    /// `rhs - lhs`; nonnegative when the inequality holds for the estimates.
    pub fn residual(&self) -> f64 {
        self.assisted_ab + self.assisted_ac - self.tangle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangleOutcome {
    pub records: Vec<TangleRecord>,
    pub summary: AuditSummary,
}

/// Checks the three-qubit tangle polygamy inequality for `psi`.
pub fn audit_tangle_state(psi: &PureState, opts: &OptimizerOptions) -> Result<TangleRecord> {
    if psi.layout().dims() != [2, 2, 2] {
        return Err(Error::Layout("tangle audits need three qubits".into()));
    }
    let tangle = tangle_pure(psi, &[0])?;
    let estimate = |o: &OptimizerOptions| -> Result<(f64, f64)> {
        let ab = assisted_measure(&psi.reduced(&[0, 1])?, PureMeasure::Tangle, o)?.value;
        let ac = assisted_measure(&psi.reduced(&[0, 2])?, PureMeasure::Tangle, o)?.value;
        Ok((ab, ac))
    };
    let holds = |(ab, ac): (f64, f64)| tangle <= ab + ac + TANGLE_TOLERANCE;
    let mut pair = estimate(opts)?;
    let mut escalated_run = false;
    if !holds(pair) {
        pair = estimate(&escalated(opts))?;
        escalated_run = true;
    }
    Ok(TangleRecord {
        trial: 0,
        seed: opts.seed,
        tangle,
        assisted_ab: pair.0,
        assisted_ac: pair.1,
        verdict: if holds(pair) { Verdict::Verified } else { Verdict::Inconclusive },
        escalated: escalated_run,
    })
}

/// Tangle audit over `trials` Haar-random three-qubit pure states.
pub fn tangle_audit(trials: usize, master_seed: u64, opts: &OptimizerOptions) -> Result<TangleOutcome> {
    let layout = SystemLayout::qubits(3);
    let records: Vec<TangleRecord> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(master_seed, i as u64);
            let psi = haar_random_pure(&layout, derive_seed(seed, STATE_STREAM));
            let mut rec = audit_tangle_state(&psi, &opts.with_seed(derive_seed(seed, OPTIMIZER_STREAM)))?;
            rec.trial = i;
            rec.seed = seed;
            Ok(rec)
        })
        .collect::<Result<_>>()?;
    let mut summary = AuditSummary::empty(None);
    for rec in &records {
        summary.count(rec.verdict, Some(-rec.residual()), rec.escalated);
    }
    Ok(TangleOutcome { records, summary })
}
