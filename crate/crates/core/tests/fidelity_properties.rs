use num_complex::Complex64;
use proptest::prelude::*;

use infodist::fidelity::{fidelity, optimal_pvm, povm_overlap, random_pvm, Povm};
use infodist::linalg::{eigendecompose_hermitian, ComplexMatrix};
use infodist::qstate::evolve;
use infodist::random::{
    derive_seed, gaussian_matrix, haar_unitary, random_density, random_pure_state, rng_from_seed,
    SeededRng,
};

/// Random POVM: `S^{-1/2} G_k G_k^dagger S^{-1/2}` with `S = sum_k G_k G_k^dagger`.
fn random_povm(dim: usize, n: usize, rng: &mut SeededRng) -> Povm {
    let grams: Vec<ComplexMatrix> = (0..n)
        .map(|_| {
            let g = gaussian_matrix(dim, rng);
            (&g * &g.adjoint()).hermitian_part()
        })
        .collect();
    let total = grams
        .iter()
        .fold(ComplexMatrix::zeros(dim), |acc, g| &acc + g);
    let inv_sqrt = eigendecompose_hermitian(&total)
        .unwrap()
        .map_spectrum(|lam| Complex64::new(lam.powf(-0.5), 0.0));
    Povm::new(
        grams
            .iter()
            .map(|g| (&(&inv_sqrt * g) * &inv_sqrt).hermitian_part())
            .collect(),
    )
    .unwrap()
}

/// Closed form for qubits: `F^2 = tr(a b) + 2 sqrt(det a det b)`.
fn qubit_fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let det = |m: &ComplexMatrix| (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re;
    let overlap = (a * b).trace().re;
    (overlap + 2.0 * (det(a).max(0.0) * det(b).max(0.0)).sqrt()).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn no_measurement_beats_fidelity(seed in any::<u64>(), dim in 2usize..5, n in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let a = random_density(dim, &mut rng);
        let b = random_density(dim, &mut rng);
        let f = fidelity(&a, &b).unwrap();
        let pvm = random_pvm(dim, n.min(dim), derive_seed(seed, 1)).unwrap();
        prop_assert!(povm_overlap(&a, &b, &pvm).unwrap() >= f - 1e-9);
        let povm = random_povm(dim, n, &mut rng);
        prop_assert!(povm_overlap(&a, &b, &povm).unwrap() >= f - 1e-9);
    }

    #[test]
    fn optimal_pvm_attains_fidelity(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = rng_from_seed(seed);
        let a = random_density(dim, &mut rng);
        let b = random_density(dim, &mut rng);
        let pvm = optimal_pvm(&a, &b).unwrap();
        let gap = povm_overlap(&a, &b, &pvm).unwrap() - fidelity(&a, &b).unwrap();
        prop_assert!(gap.abs() < 1e-7);
    }

    #[test]
    fn optimal_pvm_for_pure_against_mixed(seed in any::<u64>(), dim in 2usize..5) {
        let mut rng = rng_from_seed(seed);
        let a = random_pure_state(dim, &mut rng).to_density();
        let b = random_density(dim, &mut rng);
        let pvm = optimal_pvm(&a, &b).unwrap();
        let gap = povm_overlap(&a, &b, &pvm).unwrap() - fidelity(&a, &b).unwrap();
        prop_assert!(gap.abs() < 1e-7);
    }

    #[test]
    fn fidelity_is_symmetric_and_unitarily_invariant(seed in any::<u64>(), dim in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let a = random_density(dim, &mut rng);
        let b = random_density(dim, &mut rng);
        let f = fidelity(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - fidelity(&b, &a).unwrap()).abs() < 1e-9);
        let u = haar_unitary(dim, &mut rng);
        let g = fidelity(&evolve(&a, &u).unwrap(), &evolve(&b, &u).unwrap()).unwrap();
        prop_assert!((f - g).abs() < 1e-9);
    }

    #[test]
    fn pure_states_reduce_to_overlap(seed in any::<u64>(), dim in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let phi = random_pure_state(dim, &mut rng);
        let chi = random_pure_state(dim, &mut rng);
        let f = fidelity(&phi.to_density(), &chi.to_density()).unwrap();
        prop_assert!((f - phi.inner(&chi).unwrap().norm()).abs() < 1e-10);
    }

    #[test]
    fn pure_against_mixed_is_expectation_root(seed in any::<u64>(), dim in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let phi = random_pure_state(dim, &mut rng);
        let sigma = random_density(dim, &mut rng);
        let expected = sigma.matrix().sandwich(phi.amplitudes(), phi.amplitudes()).unwrap().re.sqrt();
        let f = fidelity(&phi.to_density(), &sigma).unwrap();
        prop_assert!((f - expected).abs() < 1e-10);
    }

    #[test]
    fn qubit_closed_form(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let a = random_density(2, &mut rng);
        let b = random_density(2, &mut rng);
        let f = fidelity(&a, &b).unwrap();
        prop_assert!((f - qubit_fidelity(a.matrix(), b.matrix())).abs() < 1e-10);
    }
}
