use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, PureState, SystemLayout, MAX_TOTAL_DIMENSION};
use crate::linalg::{reduce_pure, ComplexMatrix};
use crate::rng;
use crate::{Error, Result};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
pub fn haar_random_pure(layout: &SystemLayout, seed: u64) -> PureState {
    let mut rng = rng::stream(seed);
    let amps: Vec<Complex64> = (0..layout.total_dim()).map(|_| gaussian(&mut rng)).collect();
    PureState::normalized(amps, layout.clone()).expect("gaussian vector is nonzero")
}

/// Random mixed state: the marginal on `layout` of a Haar-random pure state
/// on `layout ⊗ C^ancilla_dim`. Its rank is at most `ancilla_dim`.
pub fn random_mixed(layout: &SystemLayout, ancilla_dim: usize, seed: u64) -> Result<DensityMatrix> {
    if ancilla_dim == 0 {
        return Err(Error::Domain("ancilla dimension must be at least 1".into()));
    }
    if ancilla_dim == 1 {
        return Ok(haar_random_pure(layout, seed).density());
    }
    let total = layout.total_dim().saturating_mul(ancilla_dim);
    if total > MAX_TOTAL_DIMENSION {
        return Err(Error::Size { dim: total, cap: MAX_TOTAL_DIMENSION });
    }
    let mut dims = layout.dims().to_vec();
    dims.push(ancilla_dim);
    let extended = SystemLayout::new(dims)?;
    let psi = haar_random_pure(&extended, seed);
    let keep: Vec<usize> = (0..layout.len()).collect();
    let m = reduce_pure(psi.amplitudes(), extended.dims(), &keep)?;
    DensityMatrix::new(m, layout.clone())
}

/// Haar-distributed `rows x cols` matrix with orthonormal columns
/// (Gram-Schmidt on a complex Gaussian matrix).
pub fn haar_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(cols <= rows, "isometry needs cols <= rows");
    loop {
        let g = ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng));
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Modified Gram-Schmidt with a reorthogonalization pass; `None` when the
/// columns are numerically dependent.
pub(crate) fn orthonormalize_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column_vec(j);
        for _ in 0..2 {
            for u in &q {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n < 1e-12 {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= n);
        q.push(v);
    }
    Some(ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i]))
}

/// Re-orthonormalizes the columns of a nearly orthonormal matrix, leaving
/// it untouched if the columns are degenerate.
pub fn orthonormalize_for_witness(m: &ComplexMatrix) -> ComplexMatrix {
    orthonormalize_columns(m).unwrap_or_else(|| m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_is_normalized_and_deterministic() {
        let l = SystemLayout::new(vec![2, 3]).unwrap();
        for seed in 0..50 {
            let a = haar_random_pure(&l, seed);
            assert!((a.norm() - 1.0).abs() < 1e-12);
            let b = haar_random_pure(&l, seed);
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
        assert_ne!(haar_random_pure(&l, 1).amplitudes(), haar_random_pure(&l, 2).amplitudes());
    }

    #[test]
    fn ancilla_one_is_pure() {
        let l = SystemLayout::qubits(2);
        let rho = random_mixed(&l, 1, 5).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        assert!(random_mixed(&l, 0, 5).is_err());
        assert!(matches!(
            random_mixed(&SystemLayout::new(vec![64, 64]).unwrap(), 2, 0),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn full_rank_mixtures_are_positive() {
        let l = SystemLayout::qubits(2);
        for seed in 0..1000 {
            let rho = random_mixed(&l, 4, seed).unwrap();
            assert!(rho.eigen().unwrap().eigenvalues[0] >= -1e-10);
        }
    }

    #[test]
    fn rank_bounded_by_ancilla() {
        let l = SystemLayout::qubits(2);
        for seed in 0..100 {
            let eig = random_mixed(&l, 2, seed).unwrap().eigen().unwrap();
            assert!(eig.eigenvalues[0] <= 1e-10 && eig.eigenvalues[1] <= 1e-10);
            assert!(eig.eigenvalues[2] > 1e-10);
        }
    }

    #[test]
    fn isometry_columns_orthonormal() {
        let mut rng = rng::stream(3);
        for (m, r) in [(4, 2), (9, 3), (16, 4), (3, 3)] {
            let u = haar_isometry(m, r, &mut rng);
            let gram = &u.adjoint() * &u;
            assert!(gram.distance(&ComplexMatrix::identity(r)) < 1e-12);
        }
    }
}
