//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use polygamy_core::linalg::{hermitian_eig, reduce_pure, Complex64, ComplexMatrix};
use polygamy_core::measures::entropy_bits;
use polygamy_core::states::{random_mixed, DensityMatrix, SystemLayout};

/// Grid resolution of the decomposition-unitary search.
pub const GRID_STEP: f64 = std::f64::consts::PI / 200.0;

/// Brute-force maximum of `p0 E(psi0) + p1 E(psi1)` over all two-member
/// decompositions of a rank-2 two-qubit state.
///
/// Two-member ensembles are `psi~_j = sum_i U_ji sqrt(l_i) e_i` for a 2x2
/// unitary `U`. Row phases of `U` only rephase members, so the search runs
/// over `U = [[cos t, e^{i f} sin t], [-e^{-i f} sin t, cos t]]` with
/// `t in [0, pi/2]` and `f in [0, 2 pi)` on a grid of step `GRID_STEP`.
pub fn grid_eoa_rank2(rho: &DensityMatrix) -> f64 {
    let eig = hermitian_eig(rho.matrix()).unwrap();
    let n = eig.eigenvalues.len();
    assert_eq!(n, 4);
    assert!(eig.eigenvalues[1] < 1e-10, "state must have rank 2");
    let b: Vec<Vec<Complex64>> = [n - 1, n - 2]
        .iter()
        .map(|&i| {
            let s = eig.eigenvalues[i].max(0.0).sqrt();
            eig.eigenvectors.column_vec(i).into_iter().map(|z| z * s).collect()
        })
        .collect();

    let member = |c0: Complex64, c1: Complex64| -> f64 {
        let v: Vec<Complex64> = (0..4).map(|k| c0 * b[0][k] + c1 * b[1][k]).collect();
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p < 1e-300 {
            return 0.0;
        }
        let sigma = reduce_pure(&v, &[2, 2], &[0]).unwrap().scale_real(1.0 / p);
        let spec = hermitian_eig(&sigma).unwrap().eigenvalues;
        p * entropy_bits(&spec.iter().map(|&x| x.max(0.0)).collect::<Vec<_>>()).unwrap()
    };

    let t_steps = (std::f64::consts::FRAC_PI_2 / GRID_STEP).round() as usize;
    let f_steps = (2.0 * std::f64::consts::PI / GRID_STEP).round() as usize;
    let mut best = f64::NEG_INFINITY;
    for it in 0..=t_steps {
        let t = it as f64 * GRID_STEP;
        let (s, c) = t.sin_cos();
        for jf in 0..f_steps {
            let e = Complex64::from_polar(1.0, jf as f64 * GRID_STEP);
            let cc = Complex64::new(c, 0.0);
            let v = member(cc, e * s) + member(-e.conj() * s, cc);
            best = best.max(v);
        }
    }
    best
}

/// Seeded rank-2 two-qubit mixed state.
pub fn rank2_two_qubit(seed: u64) -> DensityMatrix {
    random_mixed(&SystemLayout::qubits(2), 2, seed).unwrap()
}

/// `U_A ⊗ U_B` for the seeded local unitaries used by invariance checks.
pub fn local_unitary(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    ComplexMatrix::new(
        2,
        2,
        vec![Complex64::new(c, 0.0), -e.conj() * s, e * s, Complex64::new(c, 0.0)],
    )
    .unwrap()
}
