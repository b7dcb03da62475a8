//! Dense complex linear algebra for small operators.
//!
//! Every matrix function goes through a Hermitian eigendecomposition, so the
//! only numerically delicate routine is [`eigendecompose_hermitian`]. The
//! decomposition itself is delegated to `nalgebra`; ordering and eigenvector
//! phases are canonicalised here so results are reproducible.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum total dimension accepted by tensor products and composite systems.
pub const DEFAULT_CAPACITY: usize = 4096;

/// Max-abs tolerance on `m - m^dagger` for an operator to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues down to `-PSD_CLIP_TOL` are clipped to zero; below that is an error.
pub const PSD_CLIP_TOL: f64 = 1e-10;

/// Eigenvalues smaller than this many machine epsilons (times dimension and
/// spectral radius) are treated as rounding noise when taking square roots.
const SPECTRAL_FLOOR_ULPS: f64 = 4.0;

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Wraps a nalgebra matrix, checking shape and finiteness.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Shape);
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds a matrix from row-major nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape);
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Builds a matrix from real row-major rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Rank-one operator `|a><b|`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                context: "outer product",
                expected: a.len(),
                found: b.len(),
            });
        }
        Ok(Self::from_fn(a.len(), |i, j| a[i] * b[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `(m + m^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-abs entry of `self - other`; `INFINITY` when dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max-abs entry of `m - m^dagger`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Max-abs entry of `u^dagger u - 1`.
    pub fn unitarity_deviation(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.dim(),
                found: v.len(),
            });
        }
        let n = self.dim();
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.0[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `<a| m |b>`.
    pub fn sandwich(&self, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
        let mb = self.apply(b)?;
        if a.len() != mb.len() {
            return Err(Error::DimensionMismatch {
                context: "inner product",
                expected: mb.len(),
                found: a.len(),
            });
        }
        Ok(a.iter().zip(&mb).map(|(x, y)| x.conj() * y).sum())
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn assert_same_dim(&self, other: &Self, op: &str) {
        assert_eq!(
            self.dim(),
            other.dim(),
            "{op}: dimension mismatch ({} vs {})",
            self.dim(),
            other.dim()
        );
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.assert_same_dim(rhs, "add");
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.assert_same_dim(rhs, "sub");
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.assert_same_dim(rhs, "mul");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// Serialized as row-major nested `[re, im]` pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let rows: Vec<Vec<Complex64>> = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        ComplexMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Spectrum of a Hermitian operator in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim())
            .map(|i| self.eigenvectors.get(i, k))
            .collect()
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        self.map_indexed(|_, lam| f(lam))
    }

    /// Like [`map_spectrum`](Self::map_spectrum), with the eigenpair index.
    pub fn map_indexed(&self, f: impl Fn(usize, f64) -> Complex64) -> ComplexMatrix {
        let v = self.eigenvectors.as_dmatrix();
        let mut scaled = v.clone();
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let fk = f(k, lam);
            scaled.column_mut(k).iter_mut().for_each(|z| *z *= fk);
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    /// Reassembles `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| Complex64::new(l, 0.0))
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }
}

/// Kronecker product with the default capacity.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    tensor_product_with_capacity(a, b, DEFAULT_CAPACITY)
}

/// Kronecker product: `(a (x) b)[(i n + k), (j n + l)] = a[i, j] b[k, l]`.
pub fn tensor_product_with_capacity(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    capacity: usize,
) -> Result<ComplexMatrix> {
    let requested = a.dim().checked_mul(b.dim()).ok_or(Error::Capacity {
        requested: usize::MAX,
        capacity,
    })?;
    if requested > capacity {
        return Err(Error::Capacity {
            requested,
            capacity,
        });
    }
    Ok(ComplexMatrix(a.0.kronecker(&b.0)))
}

/// Kronecker product of two vectors.
pub fn tensor_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Hermitian eigendecomposition with ascending eigenvalues.
///
/// Each eigenvector has its first non-negligible component made real and
/// positive. Runs of numerically equal eigenvalues are ordered
/// lexicographically on the `(re, im)` components of their eigenvectors.
pub fn eigendecompose_hermitian(m: &ComplexMatrix) -> Result<EigenSystem> {
    m.ensure_hermitian()?;
    let n = m.dim();
    let eig = nalgebra::SymmetricEigen::new(m.hermitian_part().0);

    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut v: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
            normalize_phase(&mut v);
            (eig.eigenvalues[k], v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
    let tie = 1e-12 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end].0 - pairs[end - 1].0 <= tie {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| lexicographic(&a.1, &b.1));
        }
        start = end;
    }

    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, k| pairs[k].1[i]);
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

fn normalize_phase(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-12 * norm).copied() {
        let phase = lead.conj() / (lead.norm() * norm);
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// `exp(scale * h)` for Hermitian `h`; with `scale = -iT` this is `e^{-ihT}`.
pub fn matrix_exp_hermitian(h: &ComplexMatrix, scale: Complex64) -> Result<ComplexMatrix> {
    let eig = eigendecompose_hermitian(h)?;
    Ok(eig.map_spectrum(|l| (scale * l).exp()))
}

/// Positive semidefinite square root of a PSD Hermitian operator.
pub fn hermitian_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigendecompose_hermitian(p)?;
    let roots = clipped_roots(&eig.eigenvalues)?;
    Ok(eig.map_indexed(|k, _| Complex64::new(roots[k], 0.0)))
}

/// Square roots of a PSD spectrum, with negatives down to `-PSD_CLIP_TOL`
/// and rounding-level positives set to zero.
pub(crate) fn clipped_roots(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    let radius = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    let floor = SPECTRAL_FLOOR_ULPS * eigenvalues.len() as f64 * f64::EPSILON * radius;
    eigenvalues
        .iter()
        .map(|&l| {
            if l < -PSD_CLIP_TOL {
                Err(Error::NotPsd { eigenvalue: l })
            } else if l <= floor {
                Ok(0.0)
            } else {
                Ok(l.sqrt())
            }
        })
        .collect()
}

/// Largest singular value, from the spectrum of `m^dagger m`.
pub fn operator_norm(m: &ComplexMatrix) -> f64 {
    let gram = (&m.adjoint() * m).hermitian_part();
    // the Hermitian part of a Gram matrix always passes the Hermitian check
    let eig = eigendecompose_hermitian(&gram).expect("Gram matrix is Hermitian");
    eig.eigenvalues
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(0.0)
        .sqrt()
}

/// Sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    nalgebra::SVD::new(m.0.clone(), false, false)
        .singular_values
        .iter()
        .sum()
}
