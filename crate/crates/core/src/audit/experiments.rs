use serde::Serialize;

use crate::bounds::{evaluate_bounds, lemma1_residual, BoundParams, BoundReport, EntanglementProfile, EvalOptions};
use crate::{Error, Result};

/// `S(rho_A)` of the three-qubit W state, `log2(3) - 2/3`.
pub const W_LHS: f64 = 0.918_295_834_054_489_5;
/// Entanglement of assistance of each two-qubit marginal of the W state.
pub const W_PAIR_EOA: f64 = 2.0 / 3.0;

/// The W-state bound report at `beta`, with `k = 1`.
pub fn wstate_case(beta: f64) -> Result<BoundReport> {
    let profile = EntanglementProfile::analytic(vec![W_PAIR_EOA, W_PAIR_EOA])?;
    let opts = EvalOptions { k_override: Some(1.0), ..Default::default() };
    evaluate_bounds(W_LHS, &profile, beta, &opts)
}

/// One point of a beta sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub lhs_pow: f64,
    pub bound_thm1: f64,
    pub bound_kim: f64,
    pub bound_thm2: Option<f64>,
    pub k_used: Option<f64>,
}

impl From<&BoundReport> for SweepRow {
    fn from(r: &BoundReport) -> Self {
        Self {
            beta: r.beta,
            lhs_pow: r.lhs_pow,
            bound_thm1: r.bound_thm1,
            bound_kim: r.bound_kim,
            bound_thm2: r.bound_thm2,
            k_used: r.k_used,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepSource {
    WState,
    Profile {
        lhs: f64,
        profile: EntanglementProfile,
        opts: EvalOptions,
    },
}

/// `steps` evenly spaced values from `start` to `stop` inclusive.
pub fn beta_grid(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::Domain("beta grid needs at least one step".into()));
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) {
        return Err(Error::Domain(format!("beta grid [{start}, {stop}] leaves [0, 1]")));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    if stop <= start {
        return Err(Error::Domain("beta grid must be increasing".into()));
    }
    let n = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i == steps - 1 { stop } else { start + (stop - start) * i as f64 / n })
        .collect())
}

/// Bound curves as functions of `beta`.
pub fn beta_sweep(source: &SweepSource, grid: &[f64]) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::Domain("beta grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("beta grid must be strictly increasing".into()));
    }
    grid.iter()
        .map(|&beta| {
            let report = match source {
                SweepSource::WState => wstate_case(beta)?,
                SweepSource::Profile { lhs, profile, opts } => evaluate_bounds(*lhs, profile, beta, opts)?,
            };
            Ok(SweepRow::from(&report))
        })
        .collect()
}

/// Minimum weight-factor residual over a `resolution^3` grid of
/// `k in (0, 1]`, `beta in [0, 1]` and `x in [0, k]`.
pub fn lemma_grid_audit(resolution: usize) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::Domain("grid resolution must be at least 2".into()));
    }
    let n = resolution as f64;
    let last = (resolution - 1) as f64;
    let mut min = f64::INFINITY;
    for ik in 1..=resolution {
        let k = ik as f64 / n;
        for ib in 0..resolution {
            let params = BoundParams::new(ib as f64 / last, k)?;
            for ix in 0..resolution {
                let x = if ix == resolution - 1 { k } else { k * ix as f64 / last };
                min = min.min(lemma1_residual(x, params)?);
            }
        }
    }
    Ok(min)
}
