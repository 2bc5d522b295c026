//! Structural invariants of the linear-algebra and state layers.

use polygamy_core::linalg::{hermitian_eig, tensor_product, trace_out, Complex64, ComplexMatrix};
use polygamy_core::measures::{assisted_measure, OptimizerOptions, PureMeasure};
use polygamy_core::rng;
use polygamy_core::states::{haar_random_pure, random_mixed, w_state, PureState, SystemLayout};
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng::stream(seed);
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

fn layout_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=3, 2..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_preserves_trace_and_positivity(
        dims in layout_strategy(),
        ancilla in 1usize..=4,
        seed in any::<u64>(),
        keep_mask in 1u32..7,
    ) {
        let layout = SystemLayout::new(dims.clone()).unwrap();
        let rho = random_mixed(&layout, ancilla, seed).unwrap();
        let keep: Vec<usize> = (0..dims.len()).filter(|i| keep_mask & (1 << i) != 0).collect();
        prop_assume!(!keep.is_empty());
        let reduced = polygamy_core::linalg::partial_trace(&rho, &keep).unwrap();
        prop_assert!((reduced.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(reduced.eigen().unwrap().eigenvalues[0] >= -1e-10);
    }

    #[test]
    fn sequential_traces_commute(
        da in 2usize..=3, db in 2usize..=3, dc in 2usize..=3, seed in any::<u64>(),
    ) {
        let dims = [da, db, dc];
        let m = random_matrix(da * db * dc, seed);
        let at_once = trace_out(&m, &dims, &[0]).unwrap();
        let c_then_b = trace_out(&trace_out(&m, &dims, &[0, 1]).unwrap(), &[da, db], &[0]).unwrap();
        let b_then_c = trace_out(&trace_out(&m, &dims, &[0, 2]).unwrap(), &[da, dc], &[0]).unwrap();
        prop_assert!(at_once.distance(&c_then_b) < 1e-12);
        prop_assert!(at_once.distance(&b_then_c) < 1e-12);
    }

    #[test]
    fn tensor_then_trace_returns_first_factor(
        da in 1usize..=4, db in 1usize..=4, seed in any::<u64>(),
    ) {
        let a = random_matrix(da, seed);
        let b = random_matrix(db, seed ^ 0x9e37_79b9);
        let ab = tensor_product(&a, &b).unwrap();
        let reduced = trace_out(&ab, &[da, db], &[0]).unwrap();
        prop_assert!(reduced.distance(&a.scale(b.trace())) < 1e-12);
        let other = trace_out(&ab, &[da, db], &[1]).unwrap();
        prop_assert!(other.distance(&b.scale(a.trace())) < 1e-12);
    }

    #[test]
    fn two_by_two_spectrum_matches_characteristic_roots(
        a in -10.0f64..10.0, d in -10.0f64..10.0, re in -10.0f64..10.0, im in -10.0f64..10.0,
    ) {
        let z = Complex64::new(re, im);
        let m = ComplexMatrix::new(2, 2, vec![a.into(), z, z.conj(), d.into()]).unwrap();
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + z.norm_sqr()).sqrt();
        let eig = hermitian_eig(&m).unwrap().eigenvalues;
        prop_assert!((eig[0] - (mean - radius)).abs() < 1e-10);
        prop_assert!((eig[1] - (mean + radius)).abs() < 1e-10);
    }

    #[test]
    fn sampled_states_satisfy_density_invariants(dims in layout_strategy(), ancilla in 1usize..=5, seed in any::<u64>()) {
        let rho = random_mixed(&SystemLayout::new(dims).unwrap(), ancilla, seed).unwrap();
        let m = rho.matrix();
        prop_assert!(m.hermiticity_defect() < 1e-12);
        prop_assert!((m.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(rho.eigen().unwrap().eigenvalues[0] >= -1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn witness_reproduces_estimate(ancilla in 2usize..=3, third in 2usize..=3, seed in any::<u64>()) {
        let layout = SystemLayout::new(vec![2, third]).unwrap();
        let rho = random_mixed(&layout, ancilla, seed).unwrap();
        let opts = OptimizerOptions { restarts: 3, iterations: 150, seed, ..Default::default() };
        for measure in [PureMeasure::Entropy, PureMeasure::Tangle] {
            let est = assisted_measure(&rho, measure, &opts).unwrap();
            prop_assert!((est.witness.average(measure, &[0]).unwrap() - est.value).abs() < 1e-10);
            prop_assert!(est.witness.residual(&rho) < 1e-8);
        }
    }
}

#[test]
fn w_state_single_qubit_spectra() {
    for n in 2..=8 {
        let w = w_state(n).unwrap();
        let expected = [1.0 / n as f64, (n - 1) as f64 / n as f64];
        for q in 0..n {
            let spec = hermitian_eig(w.reduced(&[q]).unwrap().matrix()).unwrap().eigenvalues;
            assert!((spec[0] - expected[0]).abs() < 1e-12 && (spec[1] - expected[1]).abs() < 1e-12, "n={n} q={q}");
        }
    }
}

const SAMPLES: u64 = 10_000;

fn purity_samples(dims: Vec<usize>, side: usize, offset: u64) -> Vec<f64> {
    let layout = SystemLayout::new(dims).unwrap();
    (0..SAMPLES)
        .map(|i| haar_random_pure(&layout, rng::derive_seed(offset, i)).reduced(&[side]).unwrap().purity())
        .collect()
}

fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn haar_marginal_purity_mean() {
    // For a Haar state on d_A x d_B the marginal purity averages
    // (d_A + d_B) / (d_A d_B + 1).
    let (mean, _) = mean_and_variance(&purity_samples(vec![2, 2], 0, 1));
    assert!((mean - 0.8).abs() < 0.01, "mean purity {mean}");
    let (mean, _) = mean_and_variance(&purity_samples(vec![2, 3], 0, 2));
    assert!((mean - 5.0 / 7.0).abs() < 0.01, "mean purity {mean}");
}

#[test]
fn haar_sampling_is_permutation_covariant() {
    // Exact: relabelling the factors of one sample leaves its marginal alone.
    let psi = haar_random_pure(&SystemLayout::new(vec![2, 3]).unwrap(), 11);
    let swapped: Vec<Complex64> = (0..6).map(|i| psi.amplitudes()[(i % 2) * 3 + i / 2]).collect();
    let phi = PureState::new(swapped, SystemLayout::new(vec![3, 2]).unwrap()).unwrap();
    let a = psi.reduced(&[0]).unwrap().purity();
    let b = phi.reduced(&[1]).unwrap().purity();
    assert!((a - b).abs() < 1e-12);

    // Statistical: independent samples on the two orderings agree in mean.
    let (m1, v1) = mean_and_variance(&purity_samples(vec![2, 3], 0, 3));
    let (m2, v2) = mean_and_variance(&purity_samples(vec![3, 2], 1, 4));
    let se = ((v1 + v2) / SAMPLES as f64).sqrt();
    assert!((m1 - m2).abs() < 3.0 * se, "means {m1} vs {m2}, se {se}");
}
