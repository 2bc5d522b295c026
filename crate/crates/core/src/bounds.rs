//! Weighted polygamy bounds on the `beta`-th power of the one-versus-rest
//! assisted entanglement `E = E_a(A | B0 B1 ... B(N-1))`, in terms of the
//! pairwise values `E_j = E_a(A | Bj)`:
//!
//! - the Hamming-weighted bound `sum_j beta^{w(j)} E_j^beta`;
//! - the sharpened bound `sum_j f^{w(j)} E_j^beta` with the weight factor
//!   `f = ((1+k)^beta - 1) / k^beta`, valid when `E_{j+1} <= k E_j`;
//! - the position-weighted bound `sum_j f^j E_j^beta`, valid when
//!   `k E_i >= sum_{j>i} E_j`.
//!
//! Here `w(j)` is the Hamming weight of `j`. Inside bound sums `0^0 := 0`,
//! so a subsystem with zero assisted entanglement contributes nothing at
//! any `beta`.

use serde::Serialize;

use crate::{Error, Result};

/// Relative slack used by the condition predicates.
const CONDITION_RTOL: f64 = 1e-12;
pub const ANALYTIC_TOLERANCE: f64 = 1e-9;
pub const ESTIMATED_TOLERANCE: f64 = 1e-3;

/// `(beta, k)` with `0 <= beta <= 1` and `0 < k <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    beta: f64,
    k: f64,
}

impl BoundParams {
    pub fn new(beta: f64, k: f64) -> Result<Self> {
        check_beta(beta)?;
        if !(k > 0.0 && k <= 1.0) {
            return Err(Error::Domain(format!("k = {k} is outside (0, 1]")));
        }
        Ok(Self { beta, k })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::Domain(format!("beta = {beta} is outside [0, 1]")));
    }
    Ok(())
}

/// Whether a profile holds exact values or optimizer lower bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileSource {
    Analytic,
    Estimated,
}

/// Pairwise assisted entanglements `E_0, ..., E_{N-1}` in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementProfile {
    values: Vec<f64>,
    source: ProfileSource,
    /// `permutation[i]` is the original position of `values[i]`.
    permutation: Option<Vec<usize>>,
}

impl EntanglementProfile {
    pub fn new(values: Vec<f64>, source: ProfileSource) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("profile is empty".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::Domain(format!("profile value {v} is not a finite nonnegative number")));
        }
        Ok(Self { values, source, permutation: None })
    }

    pub fn analytic(values: Vec<f64>) -> Result<Self> {
        Self::new(values, ProfileSource::Analytic)
    }

    pub fn estimated(values: Vec<f64>) -> Result<Self> {
        Self::new(values, ProfileSource::Estimated)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source(&self) -> ProfileSource {
        self.source
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        self.permutation.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stable descending reordering, recording where each value came from.
    pub fn sorted_descending(&self) -> Self {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[b].total_cmp(&self.values[a]));
        let original = |i: usize| self.permutation.as_ref().map_or(i, |p| p[i]);
        Self {
            values: order.iter().map(|&i| self.values[i]).collect(),
            source: self.source,
            permutation: Some(order.iter().map(|&i| original(i)).collect()),
        }
    }
}

/// LSB-first bits `(j_0, ..., j_{n-1})` of `j`.
pub fn binary_vector(j: u64, n: u32) -> Result<Vec<u8>> {
    if n < 64 && j >> n != 0 {
        return Err(Error::Range(format!("{j} does not fit in {n} bits")));
    }
    Ok((0..n).map(|i| if i < 64 { ((j >> i) & 1) as u8 } else { 0 }).collect())
}

pub fn hamming_weight(j: u64) -> u32 {
    j.count_ones()
}

/// `((1+k)^beta - 1) / k^beta`.
pub fn weight_factor(p: BoundParams) -> f64 {
    ((1.0 + p.k).powf(p.beta) - 1.0) / p.k.powf(p.beta)
}

/// `[1 + f x^beta] - (1+x)^beta` for `0 <= x <= k`; never negative.
pub fn lemma1_residual(x: f64, p: BoundParams) -> Result<f64> {
    if !(0.0..=p.k).contains(&x) {
        return Err(Error::Domain(format!("x = {x} is outside [0, k = {}]", p.k)));
    }
    Ok(1.0 + weight_factor(p) * x.powf(p.beta) - (1.0 + x).powf(p.beta))
}

/// `x^beta` with `0^beta := 0` for every `beta`, including `beta = 0`.
pub fn pow_convention(x: f64, beta: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.powf(beta)
    }
}

fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + CONDITION_RTOL)
}

/// Geometric-decay condition `E_{j+1} <= k E_j` for consecutive entries.
pub fn check_condition_thm1(profile: &EntanglementProfile, k: f64) -> bool {
    profile.values.windows(2).all(|w| within(w[1], k * w[0]))
}

/// Tail-sum condition `k E_i >= sum_{j>i} E_j` for `i = 0, ..., N-2`.
pub fn check_condition_thm2(profile: &EntanglementProfile, k: f64) -> bool {
    let v = &profile.values;
    let mut tail = 0.0;
    for i in (0..v.len().saturating_sub(1)).rev() {
        tail += v[i + 1];
        if !within(tail, k * v[i]) {
            return false;
        }
    }
    true
}

/// Smallest `k` from a list of `(numerator, denominator)` constraints
/// `numerator <= k * denominator`.
fn smallest_k(constraints: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let mut k: f64 = 0.0;
    for (num, den) in constraints {
        if num == 0.0 {
            continue;
        }
        if den == 0.0 {
            return None;
        }
        k = k.max(num / den);
    }
    match k {
        k if k > 1.0 => None,
        0.0 => Some(1.0),
        k => Some(k),
    }
}

/// Smallest `k` satisfying [`check_condition_thm1`], or `None` when no
/// `k <= 1` does. Profiles that constrain nothing get `k = 1`.
pub fn optimal_k_thm1(profile: &EntanglementProfile) -> Option<f64> {
    smallest_k(profile.values.windows(2).map(|w| (w[1], w[0])))
}

/// Smallest `k` satisfying [`check_condition_thm2`], with the same conventions.
pub fn optimal_k_thm2(profile: &EntanglementProfile) -> Option<f64> {
    let v = &profile.values;
    let tails: Vec<f64> = (0..v.len())
        .map(|i| v[i + 1..].iter().sum())
        .collect();
    smallest_k((0..v.len().saturating_sub(1)).map(|i| (tails[i], v[i])))
}

fn weighted_sum(profile: &EntanglementProfile, beta: f64, weight: impl Fn(usize) -> f64) -> f64 {
    profile
        .values
        .iter()
        .enumerate()
        .map(|(j, &e)| weight(j) * pow_convention(e, beta))
        .sum()
}

/// `sum_j beta^{w(j)} E_j^beta`.
pub fn kim_bound(profile: &EntanglementProfile, beta: f64) -> f64 {
    weighted_sum(profile, beta, |j| beta.powi(hamming_weight(j as u64) as i32))
}

/// `sum_j f^{w(j)} E_j^beta`.
pub fn thm1_bound(profile: &EntanglementProfile, p: BoundParams) -> f64 {
    let f = weight_factor(p);
    weighted_sum(profile, p.beta, |j| f.powi(hamming_weight(j as u64) as i32))
}

/// `sum_j f^j E_j^beta`.
pub fn thm2_bound(profile: &EntanglementProfile, p: BoundParams) -> f64 {
    let f = weight_factor(p);
    weighted_sum(profile, p.beta, |j| f.powi(j as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    /// The check failed on estimated data, which proves nothing.
    Inconclusive,
    /// No `k <= 1` satisfies either weighted bound's condition.
    NotApplicable,
    /// The check failed on analytic data.
    Violated,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not_applicable",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub k_override: Option<f64>,
    /// Reorder the profile descending before evaluation.
    pub sort: bool,
    /// Overrides the source-dependent verdict tolerance.
    pub tolerance: Option<f64>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { k_override: None, sort: true, tolerance: None }
    }
}

/// Full evaluation of one left-hand side against the competing bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub beta: f64,
    /// `k` used for the weight factor; `None` when no `k <= 1` is feasible.
    pub k_used: Option<f64>,
    pub lhs: f64,
    /// `lhs^beta`.
    pub lhs_pow: f64,
    /// `(sum_j E_j)^beta`.
    pub sum_pow: f64,
    pub bound_kim: f64,
    /// Evaluated at `k_used`, or at `k = 1` when no `k` is feasible.
    pub bound_thm1: f64,
    pub bound_thm2: Option<f64>,
    pub cond_thm1: bool,
    pub cond_thm2: bool,
    /// Smallest bound whose condition holds.
    pub tightest: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// The profile in evaluation order.
    pub profile: EntanglementProfile,
}

impl BoundReport {
    pub fn gap_thm1(&self) -> f64 {
        self.bound_thm1 - self.lhs_pow
    }

    pub fn gap_kim(&self) -> f64 {
        self.bound_kim - self.lhs_pow
    }

    /// Slack of the tightest applicable bound over `lhs^beta`.
    pub fn residual(&self) -> Option<f64> {
        self.tightest.map(|t| t - self.lhs_pow)
    }
}

/// Evaluates `lhs^beta` against every bound for `profile`.
pub fn evaluate_bounds(lhs: f64, profile: &EntanglementProfile, beta: f64, opts: &EvalOptions) -> Result<BoundReport> {
    check_beta(beta)?;
    if !(lhs.is_finite() && lhs >= 0.0) {
        return Err(Error::Domain(format!("lhs = {lhs} must be finite and nonnegative")));
    }
    let ordered = if opts.sort { profile.sorted_descending() } else { profile.clone() };
    let k_used = match opts.k_override {
        Some(k) => Some(BoundParams::new(beta, k)?.k()),
        None => optimal_k_thm1(&ordered),
    };
    let tolerance = opts.tolerance.unwrap_or(match ordered.source {
        ProfileSource::Analytic => ANALYTIC_TOLERANCE,
        ProfileSource::Estimated => ESTIMATED_TOLERANCE,
    });

    let lhs_pow = pow_convention(lhs, beta);
    let sum_pow = pow_convention(ordered.values.iter().sum(), beta);
    let bound_kim = kim_bound(&ordered, beta);
    let params = BoundParams::new(beta, k_used.unwrap_or(1.0))?;
    let bound_thm1 = thm1_bound(&ordered, params);
    let bound_thm2 = k_used.map(|_| thm2_bound(&ordered, params));
    let (cond_thm1, cond_thm2) = match k_used {
        Some(k) => (check_condition_thm1(&ordered, k), check_condition_thm2(&ordered, k)),
        None => (false, false),
    };

    let tightest = [cond_thm1.then_some(bound_thm1), bound_thm2.filter(|_| cond_thm2)]
        .into_iter()
        .flatten()
        .reduce(f64::min);
    let verdict = match tightest {
        None => Verdict::NotApplicable,
        Some(t) if lhs_pow <= t + tolerance => Verdict::Verified,
        Some(_) if ordered.source == ProfileSource::Estimated => Verdict::Inconclusive,
        Some(_) => Verdict::Violated,
    };
    Ok(BoundReport {
        beta,
        k_used,
        lhs,
        lhs_pow,
        sum_pow,
        bound_kim,
        bound_thm1,
        bound_thm2,
        cond_thm1,
        cond_thm2,
        tightest,
        tolerance,
        verdict,
        profile: ordered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // High-precision reference values (30-digit arithmetic).
    const WF_HALF_HALF: f64 = 0.317_837_245_195_782_2;
    const LEMMA_X_HALF: f64 = 0.068_148_347_421_863_43;
    const THM1_GEOMETRIC: f64 = 1.383_663_493_989_480_2;
    const THM2_FLAT: f64 = 1.656_854_249_492_380_2;
    const W_LHS: f64 = 0.918_295_834_054_489_5;

    fn p(beta: f64, k: f64) -> BoundParams {
        BoundParams::new(beta, k).unwrap()
    }

    fn prof(v: &[f64]) -> EntanglementProfile {
        EntanglementProfile::analytic(v.to_vec()).unwrap()
    }

    #[test]
    fn binary_vectors() {
        assert_eq!(binary_vector(0, 3).unwrap(), vec![0, 0, 0]);
        assert_eq!(binary_vector(5, 4).unwrap(), vec![1, 0, 1, 0]);
        assert_eq!(binary_vector(15, 4).unwrap(), vec![1; 4]);
        assert!(matches!(binary_vector(16, 4), Err(Error::Range(_))));
        assert!(binary_vector(8, 3).is_err());
    }

    #[test]
    fn hamming_weights() {
        assert_eq!(hamming_weight(0), 0);
        assert_eq!(hamming_weight(6), 2);
        for m in 0..64 {
            assert_eq!(hamming_weight(1 << m), 1);
        }
    }

    #[test]
    fn params_validate() {
        assert!(BoundParams::new(0.5, 0.0).is_err());
        assert!(BoundParams::new(0.5, 1.0 + 1e-12).is_err());
        assert!(BoundParams::new(-0.1, 0.5).is_err());
        assert!(BoundParams::new(1.1, 0.5).is_err());
        assert!(BoundParams::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn weight_factor_values() {
        assert!((weight_factor(p(0.5, 1.0)) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((weight_factor(p(0.5, 0.5)) - WF_HALF_HALF).abs() < 1e-15);
        for k in [0.01, 0.3, 1.0] {
            assert!((weight_factor(p(1.0, k)) - 1.0).abs() < 1e-14);
            assert_eq!(weight_factor(p(0.0, k)), 0.0);
        }
    }

    #[test]
    fn lemma_residual_values() {
        assert_eq!(lemma1_residual(0.0, p(0.5, 1.0)).unwrap(), 0.0);
        for (beta, k) in [(0.5, 1.0), (0.3, 0.2), (0.9, 0.7)] {
            assert!(lemma1_residual(k, p(beta, k)).unwrap().abs() < 1e-12);
        }
        assert!((lemma1_residual(0.5, p(0.5, 1.0)).unwrap() - LEMMA_X_HALF).abs() < 1e-14);
        assert!(matches!(lemma1_residual(0.6, p(0.5, 0.5)), Err(Error::Domain(_))));
        assert!(lemma1_residual(-0.1, p(0.5, 0.5)).is_err());
    }

    #[test]
    fn conditions() {
        assert!(check_condition_thm1(&prof(&[2.0 / 3.0, 2.0 / 3.0]), 1.0));
        assert!(!check_condition_thm1(&prof(&[1.0, 0.6]), 0.5));
        assert!(check_condition_thm1(&prof(&[1.0, 0.5, 0.25]), 0.5));
        assert!(check_condition_thm2(&prof(&[1.0, 0.5]), 1.0));
        assert!(check_condition_thm2(&prof(&[2.0 / 3.0, 2.0 / 3.0]), 1.0));
        assert!(!check_condition_thm2(&prof(&[1.0, 0.6, 0.6]), 1.0));
        // zeros need no division
        assert!(check_condition_thm1(&prof(&[0.0, 0.0]), 0.1));
        assert!(!check_condition_thm1(&prof(&[0.0, 0.1]), 1.0));
    }

    #[test]
    fn optimal_k() {
        assert_eq!(optimal_k_thm1(&prof(&[2.0 / 3.0, 2.0 / 3.0])), Some(1.0));
        assert_eq!(optimal_k_thm1(&prof(&[1.0, 0.5, 0.25])), Some(0.5));
        assert_eq!(optimal_k_thm1(&prof(&[0.5, 1.0])), None);
        assert_eq!(optimal_k_thm1(&prof(&[0.0, 0.0, 0.0])), Some(1.0));
        assert_eq!(optimal_k_thm1(&prof(&[0.0, 0.2])), None);
        assert_eq!(optimal_k_thm1(&prof(&[0.7])), Some(1.0));
        assert_eq!(optimal_k_thm2(&prof(&[1.0, 0.5])), Some(0.5));
        assert_eq!(optimal_k_thm2(&prof(&[2.0 / 3.0, 2.0 / 3.0])), Some(1.0));
        assert_eq!(optimal_k_thm2(&prof(&[1.0, 0.6, 0.5])), None);
    }

    #[test]
    fn bounds_on_fixtures() {
        let w = prof(&[2.0 / 3.0, 2.0 / 3.0]);
        assert!((kim_bound(&w, 0.5) - 1.5 * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((thm1_bound(&w, p(0.5, 1.0)) - 2f64.sqrt() * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((thm2_bound(&w, p(0.5, 1.0)) - thm1_bound(&w, p(0.5, 1.0))).abs() < 1e-15);

        let g = prof(&[1.0, 0.5, 0.25]);
        assert!((thm1_bound(&g, p(0.5, 0.5)) - THM1_GEOMETRIC).abs() < 1e-14);

        let flat = prof(&[1.0; 4]);
        assert!((thm2_bound(&flat, p(0.5, 1.0)) - THM2_FLAT).abs() < 1e-14);
        assert!((thm1_bound(&flat, p(0.5, 1.0)) - 2.0).abs() < 1e-14);

        let any = prof(&[0.3, 0.9, 0.1]);
        for k in [0.2, 1.0] {
            assert!((thm1_bound(&any, p(1.0, k)) - 1.3).abs() < 1e-14);
            assert!((thm2_bound(&any, p(1.0, k)) - 1.3).abs() < 1e-14);
        }
        assert!((kim_bound(&any, 1.0) - 1.3).abs() < 1e-14);
        assert!((kim_bound(&prof(&[0.4]), 0.3) - 0.4f64.powf(0.3)).abs() < 1e-15);
    }

    #[test]
    fn zero_power_convention() {
        assert_eq!(pow_convention(0.0, 0.0), 0.0);
        assert_eq!(pow_convention(0.5, 0.0), 1.0);
        let r = evaluate_bounds(W_LHS, &prof(&[2.0 / 3.0, 2.0 / 3.0]), 0.0, &EvalOptions::default()).unwrap();
        assert_eq!((r.lhs_pow, r.bound_thm1, r.bound_kim), (1.0, 1.0, 1.0));
    }

    #[test]
    fn evaluate_w_state() {
        let r = evaluate_bounds(W_LHS, &prof(&[2.0 / 3.0, 2.0 / 3.0]), 0.5, &EvalOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.k_used, Some(1.0));
        assert!(r.cond_thm1 && r.cond_thm2);
        assert!((r.bound_thm1 - 1.154_700_538_379_251_5).abs() < 1e-12);
        assert!((r.lhs_pow - 0.958_277_534_983_727_7).abs() < 1e-12);
    }

    #[test]
    fn evaluate_edge_cases() {
        let r = evaluate_bounds(0.0, &prof(&[0.2, 0.9, 0.4]), 0.7, &EvalOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.profile.permutation(), Some(&[1, 2, 0][..]));

        let literal = EvalOptions { sort: false, ..Default::default() };
        let r = evaluate_bounds(1.0, &prof(&[0.5, 1.0]), 0.5, &literal).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(r.k_used, None);

        let r = evaluate_bounds(5.0, &prof(&[1.0, 0.5]), 0.5, &EvalOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        let est = EntanglementProfile::estimated(vec![1.0, 0.5]).unwrap();
        let r = evaluate_bounds(5.0, &est, 0.5, &EvalOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);

        let forced = EvalOptions { k_override: Some(0.1), ..Default::default() };
        let r = evaluate_bounds(1.0, &prof(&[1.0, 0.5]), 0.5, &forced).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(!r.cond_thm1);

        assert!(evaluate_bounds(-1.0, &prof(&[1.0]), 0.5, &EvalOptions::default()).is_err());
        assert!(evaluate_bounds(1.0, &prof(&[1.0]), 1.5, &EvalOptions::default()).is_err());
        assert!(EntanglementProfile::analytic(vec![]).is_err());
        assert!(EntanglementProfile::analytic(vec![0.1, -0.2]).is_err());
        assert!(EntanglementProfile::analytic(vec![f64::NAN]).is_err());
    }

    #[test]
    fn lemma_grid() {
        let n = 50;
        let mut min = f64::INFINITY;
        for ik in 1..=n {
            let k = ik as f64 / n as f64;
            for ib in 0..=n {
                let beta = ib as f64 / n as f64;
                for ix in 0..=n {
                    let x = k * ix as f64 / n as f64;
                    min = min.min(lemma1_residual(x, p(beta, k)).unwrap());
                }
            }
        }
        assert!(min >= -1e-12, "{min}");
    }

    #[test]
    fn weight_dominance_and_monotonicity() {
        let n = 100;
        for ib in 0..=n {
            let beta = ib as f64 / n as f64;
            let two = 2f64.powf(beta) - 1.0;
            assert!(two <= beta + 1e-12);
            let mut last = 0.0;
            for ik in 1..=n {
                let f = weight_factor(p(beta, ik as f64 / n as f64));
                assert!(f <= two + 1e-12 && (0.0..=1.0 + 1e-12).contains(&f));
                assert!(f >= last - 1e-12, "beta {beta} k {}", ik as f64 / n as f64);
                last = f;
            }
        }
    }

    fn descending_profile() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(0.0f64..=1.0, 1..=6).prop_map(|mut v| {
            v.sort_by(|a, b| b.total_cmp(a));
            v
        })
    }

    proptest! {
        #[test]
        fn chain_holds_at_optimal_k(v in descending_profile(), beta in 0.0f64..=1.0) {
            let pr = prof(&v);
            let k = optimal_k_thm1(&pr).unwrap();
            prop_assert!(check_condition_thm1(&pr, k));
            let sum_pow = pow_convention(v.iter().sum(), beta);
            let t1 = thm1_bound(&pr, p(beta, k));
            prop_assert!(sum_pow <= t1 + 1e-12, "{} > {}", sum_pow, t1);
            prop_assert!(t1 <= kim_bound(&pr, beta) + 1e-12);
            prop_assert!(thm2_bound(&pr, p(beta, k)) <= t1 + 1e-12);
        }

        #[test]
        fn sorting_records_a_permutation(v in prop::collection::vec(0.0f64..=2.0, 1..=8)) {
            let s = EntanglementProfile::analytic(v.clone()).unwrap().sorted_descending();
            let perm = s.permutation().unwrap();
            for (i, &o) in perm.iter().enumerate() {
                prop_assert_eq!(s.values()[i], v[o]);
            }
            prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
