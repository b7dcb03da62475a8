//! States on a bipartite system `A (x) B`: pure vectors, density operators,
//! embedding of local operators, partial trace, purification and evolution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigendecompose_hermitian, tensor_product_with_capacity, ComplexMatrix, DEFAULT_CAPACITY,
    PSD_CLIP_TOL,
};

/// Tolerance on `sum |a_i|^2 = 1` and on unit trace.
pub const NORM_TOL: f64 = 1e-10;

/// Tolerance on `u^dagger u = 1` for evolution operators.
pub const UNITARY_TOL: f64 = 1e-9;

/// Which factor of the composite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Dimensions of the split `H_A (x) H_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeDims {
    pub a: usize,
    pub b: usize,
}

impl CompositeDims {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        Self::with_capacity(a, b, DEFAULT_CAPACITY)
    }

    pub fn with_capacity(a: usize, b: usize, capacity: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument(format!(
                "factor dimensions must be positive, got {a}x{b}"
            )));
        }
        let requested = a.saturating_mul(b);
        if requested > capacity {
            return Err(Error::Capacity {
                requested,
                capacity,
            });
        }
        Ok(Self { a, b })
    }

    pub fn total(&self) -> usize {
        self.a * self.b
    }

    pub fn side(&self, side: Side) -> usize {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }
}

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidArgument("empty state vector".into()));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales an arbitrary nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm_sqr: norm * norm,
            });
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Canonical basis vector `|k>`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[k] = Complex64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "inner product",
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes).expect("same vector")
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            matrix: self.projector(),
        }
    }
}

/// Unit-trace, positive semidefinite Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.ensure_hermitian()?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::Trace { trace: trace.re });
        }
        let eig = eigendecompose_hermitian(&matrix)?;
        if let Some(&lowest) = eig.eigenvalues.first() {
            if lowest < -PSD_CLIP_TOL {
                return Err(Error::NotPsd { eigenvalue: lowest });
            }
        }
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// Maximally mixed state `1/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Product state `self (x) other`.
    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        Ok(DensityOperator {
            matrix: tensor_product_with_capacity(&self.matrix, &other.matrix, DEFAULT_CAPACITY)?,
        })
    }

    /// `tr(rho x)`.
    pub fn expectation(&self, x: &ComplexMatrix) -> Result<Complex64> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "expectation value",
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok((self.matrix() * x).trace())
    }
}

/// Lifts a local operator to the composite space: `op (x) 1` or `1 (x) op`.
pub fn embed(op: &ComplexMatrix, side: Side, dims: CompositeDims) -> Result<ComplexMatrix> {
    let expected = dims.side(side);
    if op.dim() != expected {
        return Err(Error::DimensionMismatch {
            context: "embed",
            expected,
            found: op.dim(),
        });
    }
    match side {
        Side::A => tensor_product_with_capacity(op, &ComplexMatrix::identity(dims.b), usize::MAX),
        Side::B => tensor_product_with_capacity(&ComplexMatrix::identity(dims.a), op, usize::MAX),
    }
}

/// Reduces a joint operator on `A (x) B` to the `keep` factor. Works on any
/// square operator of the right size, not only states.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dims: CompositeDims,
    keep: Side,
) -> Result<ComplexMatrix> {
    if m.dim() != dims.total() {
        return Err(Error::DimensionMismatch {
            context: "partial trace",
            expected: dims.total(),
            found: m.dim(),
        });
    }
    let (da, db) = (dims.a, dims.b);
    Ok(match keep {
        Side::A => ComplexMatrix::from_fn(da, |i, j| {
            (0..db).map(|k| m.get(i * db + k, j * db + k)).sum()
        }),
        Side::B => ComplexMatrix::from_fn(db, |k, l| {
            (0..da).map(|i| m.get(i * db + k, i * db + l)).sum()
        }),
    })
}

/// Reduced density operator on the `keep` factor.
pub fn partial_trace(
    rho: &DensityOperator,
    dims: CompositeDims,
    keep: Side,
) -> Result<DensityOperator> {
    DensityOperator::new(partial_trace_matrix(rho.matrix(), dims, keep)?.hermitian_part())
}

/// Purification `|Omega> = sum_i sqrt(lambda_i) |v_i> (x) |i>` on `H (x) H`.
///
/// Eigenpairs are taken in ascending-eigenvalue order, so environment basis
/// vector `i` carries the `i`-th smallest eigenvalue. Zero eigenvalues keep
/// their slot with coefficient 0.
pub fn purify(sigma: &DensityOperator) -> Result<PureState> {
    let d = sigma.dim();
    let eig = eigendecompose_hermitian(sigma.matrix())?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        let coeff = lam.max(0.0).sqrt();
        for s in 0..d {
            amplitudes[s * d + i] = eig.eigenvectors.get(s, i) * coeff;
        }
    }
    PureState::normalized(amplitudes)
}

/// `u rho u^dagger` for a unitary `u`.
pub fn evolve(initial: &DensityOperator, u: &ComplexMatrix) -> Result<DensityOperator> {
    if u.dim() != initial.dim() {
        return Err(Error::DimensionMismatch {
            context: "evolve",
            expected: initial.dim(),
            found: u.dim(),
        });
    }
    u.ensure_unitary(UNITARY_TOL)?;
    let evolved = &(u * initial.matrix()) * &u.adjoint();
    DensityOperator::new(evolved.hermitian_part())
}
