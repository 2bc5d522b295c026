use crate::states::{DensityMatrix, PureState};
use crate::{Error, Result};

/// Eigenvalues in `[-CLAMP, 0)` are treated as zero.
const CLAMP: f64 = 1e-10;
/// Eigenvalues below `-NEGATIVE_LIMIT` are rejected.
const NEGATIVE_LIMIT: f64 = 1e-8;

/// Pure-state functional lifted to mixed states by the concave roof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PureMeasure {
    /// Entropy of entanglement, in bits.
    Entropy,
    /// `2 (1 - Tr rho_A^2)`; qubit cuts only.
    Tangle,
}

impl PureMeasure {
    pub fn name(self) -> &'static str {
        match self {
            PureMeasure::Entropy => "entropy",
            PureMeasure::Tangle => "tangle",
        }
    }
}

/// `-sum l log2 l` over a spectrum, clamping tiny negative values to zero.
pub fn entropy_bits(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -NEGATIVE_LIMIT {
            return Err(Error::Positivity(l));
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s.max(0.0))
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let eig = rho.eigen()?;
    let clamped: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| if (-CLAMP..0.0).contains(&l) { 0.0 } else { l })
        .collect();
    let s = entropy_bits(&clamped)?;
    Ok(s.min((rho.layout().total_dim() as f64).log2()))
}

/// Entropy of entanglement of `psi` across `side_a | rest`.
pub fn pure_entanglement(psi: &PureState, side_a: &[usize]) -> Result<f64> {
    let side = psi.layout().bipartition(side_a)?;
    von_neumann_entropy(&psi.reduced(&side)?)
}

/// Tangle `2 (1 - Tr rho_A^2)` of `psi` across `side_a | rest`, where
/// `side_a` must be a single qubit.
pub fn tangle_pure(psi: &PureState, side_a: &[usize]) -> Result<f64> {
    let side = psi.layout().bipartition(side_a)?;
    let d = psi.layout().dim_of(&side);
    if d != 2 {
        return Err(Error::Domain(format!("tangle needs a qubit cut, side has dimension {d}")));
    }
    let purity = psi.reduced(&side)?.purity();
    Ok((2.0 * (1.0 - purity)).clamp(0.0, 1.0))
}
