use num_complex::Complex64;
use proptest::prelude::*;

use infodist::linalg::{
    eigendecompose_hermitian, hermitian_sqrt, matrix_exp_hermitian, operator_norm, tensor_product,
    trace_norm,
};
use infodist::random::{gaussian_matrix, random_hermitian, rng_from_seed};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kronecker_mixed_product(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let mut rng = rng_from_seed(seed);
        let a = gaussian_matrix(da, &mut rng);
        let b = gaussian_matrix(db, &mut rng);
        let c = gaussian_matrix(da, &mut rng);
        let d = gaussian_matrix(db, &mut rng);
        let lhs = &tensor_product(&a, &b).unwrap() * &tensor_product(&c, &d).unwrap();
        let rhs = tensor_product(&(&a * &c), &(&b * &d)).unwrap();
        prop_assert!((&lhs - &rhs).frobenius_norm() < 1e-12 * (1.0 + rhs.frobenius_norm()));
    }

    #[test]
    fn exponential_of_hermitian_is_unitary(seed in any::<u64>(), dim in 1usize..7, t in 0.0f64..10.0) {
        let h = random_hermitian(dim, &mut rng_from_seed(seed));
        let u = matrix_exp_hermitian(&h, Complex64::new(0.0, -t)).unwrap();
        prop_assert!(u.unitarity_deviation() < 1e-10);
    }

    #[test]
    fn sqrt_squares_back(seed in any::<u64>(), dim in 1usize..7, rank in 1usize..7) {
        // possibly rank-deficient PSD input
        let mut rng = rng_from_seed(seed);
        let g = gaussian_matrix(dim, &mut rng);
        let keep = rank.min(dim);
        let g = infodist::ComplexMatrix::from_fn(dim, |i, j| if j < keep { g.get(i, j) } else { Complex64::new(0.0, 0.0) });
        let p = (&g * &g.adjoint()).hermitian_part();
        let r = hermitian_sqrt(&p).unwrap();
        prop_assert!(r.is_hermitian());
        prop_assert!((&(&r * &r) - &p).frobenius_norm() <= 1e-9 * p.frobenius_norm());
    }

    #[test]
    fn operator_norm_is_a_submultiplicative_norm(seed in any::<u64>(), dim in 1usize..6) {
        let mut rng = rng_from_seed(seed);
        let a = gaussian_matrix(dim, &mut rng);
        let b = gaussian_matrix(dim, &mut rng);
        let (na, nb) = (operator_norm(&a), operator_norm(&b));
        prop_assert!(operator_norm(&(&a * &b)) <= na * nb + 1e-12 * (1.0 + na * nb));
        prop_assert!(operator_norm(&(&a + &b)) <= na + nb + 1e-12 * (1.0 + na + nb));
        // dominated by the Frobenius and trace norms
        prop_assert!(na <= a.frobenius_norm() * (1.0 + 1e-12));
        prop_assert!(trace_norm(&a) >= na * (1.0 - 1e-12));
    }

    #[test]
    fn generator_is_conserved(seed in any::<u64>(), dim in 1usize..9, t in 0.0f64..20.0) {
        let h = random_hermitian(dim, &mut rng_from_seed(seed));
        let u = matrix_exp_hermitian(&h, Complex64::new(0.0, -t)).unwrap();
        let conj = &(&u * &h) * &u.adjoint();
        prop_assert!(operator_norm(&(&conj - &h)) < 1e-9);
    }

    #[test]
    fn eigendecomposition_reconstructs_and_is_sorted(seed in any::<u64>(), dim in 1usize..7) {
        let h = random_hermitian(dim, &mut rng_from_seed(seed));
        let eig = eigendecompose_hermitian(&h).unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(eig.reconstruct().max_abs_diff(&h) < 1e-10);
        prop_assert!(eig.eigenvectors.unitarity_deviation() < 1e-10);
        prop_assert_eq!(eigendecompose_hermitian(&h).unwrap(), eig);
    }
}
