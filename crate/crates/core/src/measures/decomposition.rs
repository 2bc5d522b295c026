use num_complex::Complex64;

use super::entropy::{pure_entanglement, tangle_pure, PureMeasure};
use crate::linalg::ComplexMatrix;
use crate::rng;
use crate::states::{haar_isometry, DensityMatrix, PureState, SystemLayout};
use crate::{Error, Result};

/// Eigenvalues above this count towards the rank of a density matrix.
pub const RANK_THRESHOLD: f64 = 1e-10;

const WEIGHT_TOLERANCE: f64 = 1e-10;
const RECONSTRUCTION_TOLERANCE: f64 = 1e-8;
/// Members lighter than this are dropped when building ensembles.
const NEGLIGIBLE_WEIGHT: f64 = 1e-15;

/// Weighted pure-state ensemble `{p_i, |psi_i>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    members: Vec<(f64, PureState)>,
}

impl Decomposition {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::InvalidState("empty decomposition".into()));
        };
        let layout = first.layout().clone();
        if members.iter().any(|(p, s)| !(p.is_finite() && *p > 0.0) || s.layout() != &layout) {
            return Err(Error::InvalidState(
                "decomposition weights must be positive and states share one layout".into(),
            ));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidState(format!("decomposition weights sum to {total}")));
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn layout(&self) -> &SystemLayout {
        self.members[0].1.layout()
    }

    /// `sum p_i |psi_i><psi_i|`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.layout().total_dim();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (p, s) in &self.members {
            let a = s.amplitudes();
            for i in 0..n {
                for j in 0..n {
                    acc[(i, j)] += a[i] * a[j].conj() * *p;
                }
            }
        }
        acc
    }

    /// Frobenius distance between the ensemble average and `rho`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        self.reconstruct().distance(rho.matrix())
    }

    /// Average `sum p_i E(psi_i)` of a pure-state measure across `side_a | rest`.
    pub fn average(&self, measure: PureMeasure, side_a: &[usize]) -> Result<f64> {
        let mut acc = 0.0;
        for (p, s) in &self.members {
            let e = match measure {
                PureMeasure::Entropy => pure_entanglement(s, side_a)?,
                PureMeasure::Tangle => tangle_pure(s, side_a)?,
            };
            acc += p * e;
        }
        Ok(acc)
    }

    fn check_against(self, rho: &DensityMatrix) -> Result<Self> {
        let r = self.residual(rho);
        if r > RECONSTRUCTION_TOLERANCE {
            return Err(Error::InvalidState(format!("decomposition misses target by {r:e}")));
        }
        Ok(self)
    }
}

/// The scaled eigenvectors `sqrt(l_i) e_i` of a density matrix, for the
/// eigenvalues above [`RANK_THRESHOLD`], in descending eigenvalue order.
pub(crate) fn scaled_eigenvectors(rho: &DensityMatrix) -> Result<Vec<Vec<Complex64>>> {
    let eig = rho.eigen()?;
    let n = eig.eigenvalues.len();
    Ok((0..n)
        .rev()
        .filter(|&i| eig.eigenvalues[i] > RANK_THRESHOLD)
        .map(|i| {
            let s = eig.eigenvalues[i].sqrt();
            eig.eigenvectors.column_vec(i).into_iter().map(|z| z * s).collect()
        })
        .collect())
}

/// Unnormalized ensemble vectors `|psi~_j> = sum_i U_ji b_i`.
pub(crate) fn ensemble_vectors(basis: &[Vec<Complex64>], u: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let dim = basis[0].len();
    (0..u.rows())
        .map(|j| {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            for (i, b) in basis.iter().enumerate() {
                let c = u[(j, i)];
                for (vk, bk) in v.iter_mut().zip(b) {
                    *vk += c * bk;
                }
            }
            v
        })
        .collect()
}

pub(crate) fn ensemble_from_vectors(vectors: Vec<Vec<Complex64>>, layout: &SystemLayout) -> Result<Decomposition> {
    let mut members = Vec::with_capacity(vectors.len());
    for v in vectors {
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p > NEGLIGIBLE_WEIGHT {
            members.push((p, PureState::normalized(v, layout.clone())?));
        }
    }
    let total: f64 = members.iter().map(|(p, _)| p).sum();
    for (p, _) in &mut members {
        *p /= total;
    }
    Decomposition::new(members)
}

/// Ensemble generated by an `m x r` isometry `u` acting on the eigen-ensemble
/// of `rho`, where `r` is the rank of `rho`.
pub fn decomposition_from_isometry(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<Decomposition> {
    let basis = scaled_eigenvectors(rho)?;
    if u.cols() != basis.len() {
        return Err(Error::Shape(format!(
            "isometry has {} columns but the state has rank {}",
            u.cols(),
            basis.len()
        )));
    }
    let gram = &u.adjoint() * u;
    if gram.distance(&ComplexMatrix::identity(u.cols())) > 1e-10 {
        return Err(Error::Domain("matrix columns are not orthonormal".into()));
    }
    ensemble_from_vectors(ensemble_vectors(&basis, u), rho.layout())?.check_against(rho)
}

/// Decomposition of `rho` into at most `size` members drawn from a
/// Haar-random isometry.
pub fn random_decomposition(rho: &DensityMatrix, size: usize, seed: u64) -> Result<Decomposition> {
    let rank = scaled_eigenvectors(rho)?.len();
    if size < rank {
        return Err(Error::Domain(format!("ensemble size {size} is below the rank {rank}")));
    }
    let mut rng = rng::stream(seed);
    let u = haar_isometry(size, rank, &mut rng);
    decomposition_from_isometry(rho, &u)
}
