//! Distinguishability: Uhlmann fidelity, the outcome-overlap functional of a
//! measurement, and a projective measurement that attains the fidelity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clipped_roots, eigendecompose_hermitian, hermitian_sqrt, trace_norm, ComplexMatrix,
    PSD_CLIP_TOL,
};
use crate::qstate::DensityOperator;
use crate::random::{haar_unitary, rng_from_seed};

/// Tolerance for projector and completeness checks.
pub const MEASUREMENT_TOL: f64 = 1e-9;

/// Fidelity overshoot beyond `[0, 1]` that is silently clipped.
pub const FIDELITY_CLIP: f64 = 1e-9;

/// Anything with a finite list of effects summing to the identity.
pub trait Measurement {
    fn elements(&self) -> &[ComplexMatrix];

    fn dim(&self) -> usize {
        self.elements().first().map_or(0, ComplexMatrix::dim)
    }
}

/// Projection-valued measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Pvm {
    projectors: Vec<ComplexMatrix>,
}

impl Pvm {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = check_family(&projectors)?;
        for (i, p) in projectors.iter().enumerate() {
            p.ensure_hermitian()?;
            let idem = (p * p).max_abs_diff(p);
            if idem > MEASUREMENT_TOL {
                return Err(Error::InvalidArgument(format!(
                    "element {i} is not idempotent (deviation {idem:e})"
                )));
            }
            for (j, q) in projectors.iter().enumerate().skip(i + 1) {
                let cross = (p * q).max_abs();
                if cross > MEASUREMENT_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "elements {i} and {j} are not orthogonal (deviation {cross:e})"
                    )));
                }
            }
        }
        check_completeness(&projectors, dim)?;
        Ok(Self { projectors })
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// Rank of each projector.
    pub fn ranks(&self) -> Vec<usize> {
        self.projectors
            .iter()
            .map(|p| p.trace().re.round() as usize)
            .collect()
    }
}

impl Measurement for Pvm {
    fn elements(&self) -> &[ComplexMatrix] {
        &self.projectors
    }
}

/// Positive-operator-valued measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = check_family(&elements)?;
        for e in &elements {
            let eig = eigendecompose_hermitian(e)?;
            if let Some(&lowest) = eig.eigenvalues.first() {
                if lowest < -PSD_CLIP_TOL {
                    return Err(Error::NotPsd { eigenvalue: lowest });
                }
            }
        }
        check_completeness(&elements, dim)?;
        Ok(Self { elements })
    }
}

impl Measurement for Povm {
    fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }
}

impl From<Pvm> for Povm {
    fn from(p: Pvm) -> Self {
        Povm {
            elements: p.projectors,
        }
    }
}

fn check_family(elements: &[ComplexMatrix]) -> Result<usize> {
    let dim = elements
        .first()
        .map(ComplexMatrix::dim)
        .ok_or_else(|| Error::InvalidArgument("measurement has no elements".into()))?;
    if let Some(bad) = elements.iter().find(|e| e.dim() != dim) {
        return Err(Error::DimensionMismatch {
            context: "measurement element",
            expected: dim,
            found: bad.dim(),
        });
    }
    Ok(dim)
}

fn check_completeness(elements: &[ComplexMatrix], dim: usize) -> Result<()> {
    let total = elements
        .iter()
        .fold(ComplexMatrix::zeros(dim), |acc, e| &acc + e);
    let dev = total.max_abs_diff(&ComplexMatrix::identity(dim));
    if dev > MEASUREMENT_TOL {
        return Err(Error::InvalidArgument(format!(
            "elements do not sum to the identity (deviation {dev:e})"
        )));
    }
    Ok(())
}

/// Outcome probabilities `p(k) = tr(rho E_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeDistribution {
    pub probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Bhattacharyya overlap `sum_k sqrt(p(k) q(k))`.
    pub fn overlap(&self, other: &OutcomeDistribution) -> f64 {
        self.probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(p, q)| (p * q).sqrt())
            .sum()
    }
}

pub fn outcome_distribution(
    rho: &DensityOperator,
    m: &impl Measurement,
) -> Result<OutcomeDistribution> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            context: "measurement",
            expected: rho.dim(),
            found: m.dim(),
        });
    }
    let probabilities = m
        .elements()
        .iter()
        .map(|e| Ok(rho.expectation(e)?.re.max(0.0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OutcomeDistribution { probabilities })
}

/// Uhlmann fidelity `tr sqrt(sqrt(s0) s1 sqrt(s0))`, evaluated as the trace
/// norm of `sqrt(s0) sqrt(s1)`.
pub fn fidelity(s0: &DensityOperator, s1: &DensityOperator) -> Result<f64> {
    if s0.dim() != s1.dim() {
        return Err(Error::DimensionMismatch {
            context: "fidelity",
            expected: s0.dim(),
            found: s1.dim(),
        });
    }
    let r0 = hermitian_sqrt(s0.matrix())?;
    let r1 = hermitian_sqrt(s1.matrix())?;
    let value = trace_norm(&(&r0 * &r1));
    if value > 1.0 + FIDELITY_CLIP {
        return Err(Error::FidelityOutOfRange { value });
    }
    Ok(value.min(1.0))
}

/// Overlap of the outcome distributions that `m` induces on the two states.
pub fn povm_overlap(
    s0: &DensityOperator,
    s1: &DensityOperator,
    m: &impl Measurement,
) -> Result<f64> {
    if s0.dim() != s1.dim() {
        return Err(Error::DimensionMismatch {
            context: "povm overlap",
            expected: s0.dim(),
            found: s1.dim(),
        });
    }
    let p0 = outcome_distribution(s0, m)?;
    let p1 = outcome_distribution(s1, m)?;
    Ok(p0.overlap(&p1).min(1.0))
}

/// Projective measurement whose outcome overlap equals the fidelity.
///
/// On the support of `s1` the measurement is the eigenbasis of
/// `M = s1^{-1/2} sqrt(sqrt(s1) s0 sqrt(s1)) s1^{-1/2}`; the kernel of `s1`
/// is one extra projector.
pub fn optimal_pvm(s0: &DensityOperator, s1: &DensityOperator) -> Result<Pvm> {
    if s0.dim() != s1.dim() {
        return Err(Error::DimensionMismatch {
            context: "optimal pvm",
            expected: s0.dim(),
            found: s1.dim(),
        });
    }
    let d = s1.dim();
    let eig1 = eigendecompose_hermitian(s1.matrix())?;
    let roots = clipped_roots(&eig1.eigenvalues)?;
    let support: Vec<usize> = (0..d).filter(|&k| roots[k] > 0.0).collect();
    let kernel: Vec<usize> = (0..d).filter(|&k| roots[k] == 0.0).collect();
    let v1 = eig1.eigenvectors.as_dmatrix();

    let mut projectors = Vec::with_capacity(d);
    if !support.is_empty() {
        let r = support.len();
        let basis = DMatrix::from_fn(d, r, |i, k| v1[(i, support[k])]);
        let root = DMatrix::from_fn(r, r, |i, j| {
            if i == j {
                Complex64::new(roots[support[i]], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let inv_root = DMatrix::from_fn(r, r, |i, j| {
            if i == j {
                Complex64::new(1.0 / roots[support[i]], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let s0_support = basis.adjoint() * s0.matrix().as_dmatrix() * &basis;
        let inner = ComplexMatrix::from_dmatrix(&root * s0_support * &root)?.hermitian_part();
        let geometric = hermitian_sqrt(&inner)?;
        let m = ComplexMatrix::from_dmatrix(&inv_root * geometric.as_dmatrix() * &inv_root)?
            .hermitian_part();
        let w = eigendecompose_hermitian(&m)?;
        let lifted = basis * w.eigenvectors.as_dmatrix();
        for k in 0..r {
            let col: Vec<Complex64> = lifted.column(k).iter().copied().collect();
            projectors.push(ComplexMatrix::outer(&col, &col)?);
        }
    }
    if !kernel.is_empty() {
        let ker = DMatrix::from_fn(d, kernel.len(), |i, k| v1[(i, kernel[k])]);
        projectors.push(ComplexMatrix::from_dmatrix(&ker * ker.adjoint())?);
    }
    Pvm::new(projectors)
}

/// Haar-random PVM with `n_outcomes` elements.
///
/// The canonical basis is split into `n_outcomes` contiguous blocks (the
/// first `dim % n_outcomes` blocks get one extra vector) and each block
/// projector is conjugated by a Haar unitary drawn from `seed`.
pub fn random_pvm(dim: usize, n_outcomes: usize, seed: u64) -> Result<Pvm> {
    if n_outcomes == 0 || dim == 0 {
        return Err(Error::InvalidArgument(
            "dimension and outcome count must be positive".into(),
        ));
    }
    if n_outcomes > dim {
        return Err(Error::InvalidArgument(format!(
            "cannot split dimension {dim} into {n_outcomes} nonzero projectors"
        )));
    }
    let u = haar_unitary(dim, &mut rng_from_seed(seed));
    let (base, extra) = (dim / n_outcomes, dim % n_outcomes);
    let mut start = 0;
    let mut projectors = Vec::with_capacity(n_outcomes);
    for k in 0..n_outcomes {
        let len = base + usize::from(k < extra);
        let cols = start..start + len;
        let p = ComplexMatrix::from_fn(dim, |i, j| {
            cols.clone().map(|c| u.get(i, c) * u.get(j, c).conj()).sum()
        });
        projectors.push(p);
        start += len;
    }
    Pvm::new(projectors)
}
