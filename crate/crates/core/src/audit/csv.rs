//! Plain CSV writers with locale-independent, fixed-precision numbers.

use std::io::{self, Write};

use super::experiments::SweepRow;
use super::random::{AuditRecord, TangleRecord};

const SIGNIFICANT_DIGITS: usize = 12;

/// Formats `x` with 12 significant digits. Numbers with a decimal exponent
/// in `[-5, 12)` print positionally, the rest in `d.ddde-N` notation.
/// Trailing zeros are dropped, so `0.5` prints as `0.5` and zero as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// `beta,lhs_pow,bound_thm1,bound_kim,bound_thm2,k_used`; missing values
/// are empty fields.
pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "beta,lhs_pow,bound_thm1,bound_kim,bound_thm2,k_used")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            format_number(r.beta),
            format_number(r.lhs_pow),
            format_number(r.bound_thm1),
            format_number(r.bound_kim),
            optional(r.bound_thm2),
            optional(r.k_used),
        )?;
    }
    Ok(())
}

/// `trial,seed,lhs,E0,...,E(N-1),beta,verdict,residual` with one row per
/// trial and beta. `E0..` follow subsystem order; `residual` is the slack
/// of the tightest applicable bound, empty when none applies. Records must
/// share a layout.
pub fn write_audit_csv<W: Write>(mut out: W, records: &[AuditRecord]) -> io::Result<()> {
    let n = records.first().map_or(0, |r| r.profile.len());
    let e_cols: String = (0..n).map(|j| format!("E{j},")).collect();
    writeln!(out, "trial,seed,lhs,{e_cols}beta,verdict,residual")?;
    for rec in records {
        if rec.profile.len() != n {
            return Err(io::Error::new(io::ErrorKind::InvalidInput, "records have different profile lengths"));
        }
        let e_vals: String = rec.profile.values().iter().map(|&e| format_number(e) + ",").collect();
        for report in &rec.reports {
            writeln!(
                out,
                "{},{},{},{}{},{},{}",
                rec.trial,
                rec.seed,
                format_number(rec.lhs),
                e_vals,
                format_number(report.beta),
                report.verdict.as_str(),
                optional(report.residual()),
            )?;
        }
    }
    Ok(())
}

/// `trial,seed,tau,tau_a_AB,tau_a_AC,verdict,residual`.
pub fn write_tangle_csv<W: Write>(mut out: W, records: &[TangleRecord]) -> io::Result<()> {
    writeln!(out, "trial,seed,tau,tau_a_AB,tau_a_AC,verdict,residual")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            format_number(r.tangle),
            format_number(r.assisted_ab),
            format_number(r.assisted_ac),
            r.verdict.as_str(),
            format_number(r.residual()),
        )?;
    }
    Ok(())
}
