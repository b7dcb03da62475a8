//! Seeded generators for random operators and states.
//!
//! Conventions: complex Gaussian entries have independent standard normal
//! real and imaginary parts; Hermitian samples are `(G + G^dagger) / 2`;
//! mixed states are `G G^dagger / tr(G G^dagger)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{eigendecompose_hermitian, ComplexMatrix};
use crate::qstate::{DensityOperator, PureState};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-instance seed derived from a root seed (splitmix64 finaliser).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Complex64> {
    (0..dim).map(|_| complex_gaussian(rng)).collect()
}

fn gaussian_dmatrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    // column-major fill order is part of the reproducibility contract
    DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng))
}

pub fn gaussian_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_dmatrix(gaussian_dmatrix(dim, rng)).expect("finite Gaussian samples")
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    gaussian_matrix(dim, rng).hermitian_part()
}

/// Full-rank mixed state (with probability one).
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityOperator {
    let g = gaussian_matrix(dim, rng);
    let gram = (&g * &g.adjoint()).hermitian_part();
    let tr = gram.trace().re;
    DensityOperator::new(gram.scale_real(1.0 / tr)).expect("normalised Gram matrix is a state")
}

pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    PureState::normalized(gaussian_vector(dim, rng)).expect("nonzero Gaussian vector")
}

/// Orthonormal pair by Gram-Schmidt on two Gaussian vectors. Needs `dim >= 2`.
pub fn random_orthonormal_pair<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> (PureState, PureState) {
    assert!(dim >= 2, "an orthogonal pair needs dimension at least 2");
    let first = random_pure_state(dim, rng);
    loop {
        let mut v = gaussian_vector(dim, rng);
        let proj: Complex64 = first
            .amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum();
        v.iter_mut()
            .zip(first.amplitudes())
            .for_each(|(x, a)| *x -= proj * a);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let second = PureState::normalized(v).expect("nonzero residual");
            return (first, second);
        }
    }
}

/// Haar-random unitary: QR of a Ginibre matrix, columns rephased so that
/// `diag(R)` is real positive.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let qr = gaussian_dmatrix(dim, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q.column_mut(k).iter_mut().for_each(|z| *z *= phase);
    }
    ComplexMatrix::from_dmatrix(q).expect("finite unitary")
}

/// A unitary that is a function of `l`: each distinct eigenvalue of `l`
/// receives an independent uniform phase, so `u l u^dagger = l`.
pub fn unitary_commuting_with<R: Rng + ?Sized>(l: &ComplexMatrix, rng: &mut R) -> ComplexMatrix {
    let eig = eigendecompose_hermitian(l).expect("conserved quantity must be Hermitian");
    let scale = eig.max_abs_eigenvalue().max(1.0);
    let mut phases = Vec::with_capacity(eig.dim());
    let mut last: Option<f64> = None;
    for &lam in &eig.eigenvalues {
        match last {
            Some(prev) if lam - prev <= 1e-9 * scale => {
                let p = *phases.last().expect("pushed with last");
                phases.push(p);
            }
            _ => phases.push(rng.random_range(0.0..std::f64::consts::TAU)),
        }
        last = Some(lam);
    }
    eig.map_indexed(|k, _| Complex64::from_polar(1.0, phases[k]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary_and_deterministic() {
        let u = haar_unitary(4, &mut rng_from_seed(3));
        assert!(u.unitarity_deviation() < 1e-12);
        assert_eq!(u, haar_unitary(4, &mut rng_from_seed(3)));
        assert_ne!(u, haar_unitary(4, &mut rng_from_seed(4)));
    }

    #[test]
    fn orthonormal_pair_is_orthonormal() {
        let mut rng = rng_from_seed(11);
        for dim in 2..6 {
            let (a, b) = random_orthonormal_pair(dim, &mut rng);
            assert!(a.inner(&b).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn commuting_unitary_conserves() {
        let mut rng = rng_from_seed(5);
        let l = random_hermitian(5, &mut rng);
        let u = unitary_commuting_with(&l, &mut rng);
        assert!(u.unitarity_deviation() < 1e-12);
        let conj = &(&u * &l) * &u.adjoint();
        assert!(conj.max_abs_diff(&l) < 1e-12);
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(0, i)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }
}
