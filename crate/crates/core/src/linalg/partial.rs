use num_complex::Complex64;

use super::ComplexMatrix;
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Index bookkeeping for splitting a big-endian mixed-radix basis index into
/// a kept part and a traced part.
struct Split {
    kept_dim: usize,
    traced_dim: usize,
    /// `full[k * traced_dim + t]` is the full basis index for kept index `k`
    /// and traced index `t`.
    full: Vec<usize>,
}

fn split(dims: &[usize], keep: &[usize]) -> Result<(Vec<usize>, Split)> {
    if keep.is_empty() {
        return Err(Error::Layout("keep set is empty".into()));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    if let Some(&bad) = kept.iter().find(|&&i| i >= dims.len()) {
        return Err(Error::Layout(format!(
            "subsystem {bad} out of range for {} subsystems",
            dims.len()
        )));
    }
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Layout("keep set has duplicate indices".into()));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();

    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let kept_dim: usize = kept.iter().map(|&i| dims[i]).product();
    let traced_dim: usize = traced.iter().map(|&i| dims[i]).product();

    // Offsets contributed by each kept / traced multi-index, big-endian.
    let offsets = |subs: &[usize], total: usize| -> Vec<usize> {
        (0..total)
            .map(|mut idx| {
                let mut off = 0;
                for &s in subs.iter().rev() {
                    off += (idx % dims[s]) * strides[s];
                    idx /= dims[s];
                }
                off
            })
            .collect()
    };
    let kept_off = offsets(&kept, kept_dim);
    let traced_off = offsets(&traced, traced_dim);
    let mut full = Vec::with_capacity(kept_dim * traced_dim);
    for k in &kept_off {
        for t in &traced_off {
            full.push(k + t);
        }
    }
    Ok((kept, Split { kept_dim, traced_dim, full }))
}

/// Traces out every subsystem not listed in `keep` from a square matrix on
/// a space with subsystem dimensions `dims`.
pub fn trace_out(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::Shape(format!(
            "{}x{} matrix does not match layout dimension {total}",
            m.rows(),
            m.cols()
        )));
    }
    let (_, s) = split(dims, keep)?;
    let mut out = ComplexMatrix::zeros(s.kept_dim, s.kept_dim);
    for k1 in 0..s.kept_dim {
        for k2 in 0..s.kept_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..s.traced_dim {
                acc += m[(s.full[k1 * s.traced_dim + t], s.full[k2 * s.traced_dim + t])];
            }
            out[(k1, k2)] = acc;
        }
    }
    Ok(out)
}

/// Reduced (unnormalized) density matrix of the vector `amps` on the
/// subsystems in `keep`, without forming the full projector.
pub fn reduce_pure(amps: &[Complex64], dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if amps.len() != total {
        return Err(Error::Shape(format!(
            "{} amplitudes do not match layout dimension {total}",
            amps.len()
        )));
    }
    let (_, s) = split(dims, keep)?;
    let mut out = ComplexMatrix::zeros(s.kept_dim, s.kept_dim);
    for k1 in 0..s.kept_dim {
        let row1 = &s.full[k1 * s.traced_dim..(k1 + 1) * s.traced_dim];
        for k2 in k1..s.kept_dim {
            let row2 = &s.full[k2 * s.traced_dim..(k2 + 1) * s.traced_dim];
            let acc: Complex64 = row1.iter().zip(row2).map(|(&a, &b)| amps[a] * amps[b].conj()).sum();
            out[(k1, k2)] = acc;
            out[(k2, k1)] = acc.conj();
        }
    }
    Ok(out)
}

/// Reduced state on the subsystems in `keep`, in their original order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let reduced = trace_out(rho.matrix(), layout.dims(), keep)?;
    let sub = layout.subset(keep)?;
    DensityMatrix::new(reduced, sub)
}
