use num_complex::Complex64;

use super::SystemLayout;
use crate::linalg::{hermitian_eig, reduce_pure, tensor_product, ComplexMatrix, HermitianEigen};
use crate::{Error, Result};

/// Tolerance for the norm, trace, Hermiticity and positivity invariants of
/// constructed states.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// Normalized state vector on a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    layout: SystemLayout,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, layout: SystemLayout) -> Result<Self> {
        Self::with_tolerance(amplitudes, layout, STATE_TOLERANCE)
    }

    /// Accepts vectors whose norm is within `tol` of one and renormalizes them.
    pub fn with_tolerance(amplitudes: Vec<Complex64>, layout: SystemLayout, tol: f64) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::InvalidState(format!(
                "{} amplitudes for layout dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("state norm {norm} differs from 1")));
        }
        Ok(Self::from_raw(amplitudes, layout, norm))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(amplitudes: Vec<Complex64>, layout: SystemLayout) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::InvalidState(format!(
                "{} amplitudes for layout dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        let n = norm(&amplitudes);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self::from_raw(amplitudes, layout, n))
    }

    fn from_raw(mut amplitudes: Vec<Complex64>, layout: SystemLayout, norm: f64) -> Self {
        if norm != 1.0 {
            for z in &mut amplitudes {
                *z /= norm;
            }
        }
        Self { amplitudes, layout }
    }

    /// Computational basis state `|index>`.
    pub fn basis(layout: SystemLayout, index: usize) -> Result<Self> {
        if index >= layout.total_dim() {
            return Err(Error::Range(format!("basis index {index} out of range")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: amps, layout })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    /// `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            layout: self.layout.clone(),
        }
    }

    /// Reduced state on `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let m = reduce_pure(&self.amplitudes, self.layout.dims(), keep)?;
        DensityMatrix::new(m, self.layout.subset(keep)?)
    }

    /// `self ⊗ other`, with `self` as the leading subsystems.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let a = ComplexMatrix::column(&self.amplitudes);
        let b = ComplexMatrix::column(&other.amplitudes);
        let amps = tensor_product(&a, &b)?.into_entries();
        let mut dims = self.layout.dims().to_vec();
        dims.extend_from_slice(other.layout.dims());
        PureState::new(amps, SystemLayout::new(dims)?)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Positive semidefinite unit-trace Hermitian matrix on a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: SystemLayout,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, layout: SystemLayout) -> Result<Self> {
        Self::with_tolerance(matrix, layout, STATE_TOLERANCE)
    }

    /// Validates the density-matrix invariants at tolerance `tol`; the stored
    /// matrix is the Hermitian part of the input.
    pub fn with_tolerance(matrix: ComplexMatrix, layout: SystemLayout, tol: f64) -> Result<Self> {
        let dim = layout.total_dim();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(Error::InvalidState(format!(
                "{}x{} matrix for layout dimension {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:e})")));
        }
        let matrix = matrix.hermitian_part();
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = hermitian_eig(&matrix)?.eigenvalues[0];
        if min < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, layout })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn layout(&self) -> &SystemLayout {
        &self.layout
    }

    pub fn eigen(&self) -> Result<HermitianEigen> {
        hermitian_eig(&self.matrix)
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Number of eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> Result<usize> {
        Ok(self.eigen()?.eigenvalues.iter().filter(|&&l| l > threshold).count())
    }

    /// `U rho U^dagger`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = &u.matmul(&self.matrix)? * &u.adjoint();
        Self::new(m, self.layout.clone())
    }
}

/// Equal superposition of the `n`-qubit basis states with a single excitation.
pub fn w_state(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::Domain(format!("W state needs at least 2 qubits, got {n}")));
    }
    let layout = SystemLayout::new(vec![2; n])?;
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
    for q in 0..n {
        amps[1 << (n - 1 - q)] = amp;
    }
    PureState::new(amps, layout)
}

/// `(|00> + |11>) / sqrt(2)`.
pub fn bell_state() -> PureState {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState::new(vec![h, z, z, h], SystemLayout::qubits(2)).expect("normalized")
}
