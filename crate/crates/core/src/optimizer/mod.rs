//! Searching for the weakest interaction that distributes the bit, and
//! statistical sweeps of the bound.

pub mod basis;
pub mod nelder_mead;
pub mod sweep;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fidelity::fidelity;
use crate::linalg::{operator_norm, ComplexMatrix};
use crate::qstate::{CompositeDims, DensityOperator, PureState};
use crate::random::rng_from_seed;
use crate::tradeoff::{
    evolve_scenario, interaction_lower_bound, ConservedTriple, Evolution, Scenario,
};

pub use basis::{BasisRegistry, InteractionBasis, DEFAULT_BASIS};
pub use nelder_mead::{NelderMeadOptions, NelderMeadOutcome};
pub use sweep::{
    random_conserving_scenario, random_scenario, sweep_slack, SweepConfig, SweepKind, SweepRow,
    SweepSummary,
};

/// Weight of the quadratic constraint penalties.
pub const PENALTY_WEIGHT: f64 = 1e4;

/// Slack allowed when checking a feasible result against the no-go bound.
pub const COROLLARY_TOL: f64 = 1e-6;

/// `H_int(theta) = sum_k theta_k basis_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionParametrization {
    basis: Vec<ComplexMatrix>,
}

impl InteractionParametrization {
    pub fn new(basis: Vec<ComplexMatrix>) -> Result<Self> {
        let first = basis
            .first()
            .ok_or_else(|| Error::InvalidArgument("interaction basis is empty".into()))?;
        let dim = first.dim();
        for b in &basis {
            if b.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "interaction basis element",
                    expected: dim,
                    found: b.dim(),
                });
            }
            b.ensure_hermitian()?;
        }
        Ok(Self {
            basis: basis.into_iter().map(|b| b.hermitian_part()).collect(),
        })
    }

    /// Instantiates a registered basis for `dims`.
    pub fn from_basis(basis: &dyn InteractionBasis, dims: CompositeDims) -> Result<Self> {
        Self::new(basis.elements(dims)?)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn interaction(&self, coefficients: &[f64]) -> ComplexMatrix {
        assert_eq!(coefficients.len(), self.basis.len());
        self.basis
            .iter()
            .zip(coefficients)
            .fold(ComplexMatrix::zeros(self.dim()), |acc, (b, &t)| {
                &acc + &b.scale_real(t)
            })
    }
}

/// Everything in a scenario except the interaction term.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedParts {
    pub dims: CompositeDims,
    pub h_a: ComplexMatrix,
    pub h_b: ComplexMatrix,
    pub psi0: PureState,
    pub psi1: PureState,
    pub sigma: DensityOperator,
    pub time: f64,
}

impl FixedParts {
    /// Validates by assembling a scenario with no interaction.
    pub fn new(
        dims: CompositeDims,
        h_a: ComplexMatrix,
        h_b: ComplexMatrix,
        psi0: PureState,
        psi1: PureState,
        sigma: DensityOperator,
        time: f64,
    ) -> Result<Self> {
        let parts = Self {
            dims,
            h_a,
            h_b,
            psi0,
            psi1,
            sigma,
            time,
        };
        parts.with_interaction(ComplexMatrix::zeros(dims.total()))?;
        Ok(parts)
    }

    pub fn from_scenario(s: &Scenario) -> Self {
        Self {
            dims: s.dims,
            h_a: s.conserved.part_a.clone(),
            h_b: s.conserved.part_b.clone(),
            psi0: s.psi0.clone(),
            psi1: s.psi1.clone(),
            sigma: s.sigma.clone(),
            time: s.time,
        }
    }

    pub fn with_interaction(&self, h_int: ComplexMatrix) -> Result<Scenario> {
        Scenario::new(
            self.dims,
            ConservedTriple::new(self.h_a.clone(), self.h_b.clone(), h_int)?,
            self.psi0.clone(),
            self.psi1.clone(),
            self.sigma.clone(),
            self.time,
            Evolution::Generated,
        )
    }

    pub fn lhs(&self) -> Result<f64> {
        Ok(self
            .h_a
            .sandwich(self.psi0.amplitudes(), self.psi1.amplitudes())?
            .norm())
    }
}

/// Best interaction found by [`minimize_interaction`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_coefficients: Vec<f64>,
    pub best_norm_int: f64,
    pub achieved_fid_a: f64,
    pub achieved_fid_b: f64,
    pub feasible: bool,
    /// `max(0, (lhs - (||H_A|| + ||H_B||) delta) / 2)`.
    pub corollary_lower_bound: f64,
    pub evaluations: usize,
    pub lhs: f64,
    pub delta: f64,
    pub restarts: usize,
    /// Best feasible norm known after each restart (`None` until one is found).
    pub best_norm_by_restart: Vec<Option<f64>>,
}

#[derive(Clone, Debug)]
struct Evaluation {
    coefficients: Vec<f64>,
    norm_int: f64,
    fid_a: f64,
    fid_b: f64,
    objective: f64,
}

/// Derivative-free search for the smallest `||H_int(theta)||` with both
/// final fidelities at most `delta`.
///
/// Runs Nelder-Mead on
/// `||H_int|| + k max(0, F_A - delta)^2 + k max(0, F_B - delta)^2`
/// with restarts until `budget` evaluations are spent. Restart 0 starts at
/// `theta = 0`, odd restarts polish the best point so far, even restarts
/// start from a random point. Every evaluated point is checked against the
/// constraints without penalty; the smallest-norm point passing that check
/// (earliest on ties) is reported.
pub fn minimize_interaction(
    fixed: &FixedParts,
    param: &InteractionParametrization,
    delta: f64,
    budget: usize,
    seed: u64,
) -> Result<OptimizationResult> {
    if param.is_empty() {
        return Err(Error::InvalidArgument("interaction basis is empty".into()));
    }
    if param.dim() != fixed.dims.total() {
        return Err(Error::DimensionMismatch {
            context: "interaction basis",
            expected: fixed.dims.total(),
            found: param.dim(),
        });
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target fidelity must lie in (0, 1], got {delta}"
        )));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument(
            "evaluation budget must be at least 1".into(),
        ));
    }

    let n = param.len();
    let lhs = fixed.lhs()?;
    let norm_a = operator_norm(&fixed.h_a);
    let norm_b = operator_norm(&fixed.h_b);
    let lower_bound = interaction_lower_bound(lhs, norm_a, norm_b, delta);

    let scale = if fixed.time > 0.0 {
        std::f64::consts::PI / fixed.time
    } else {
        1.0
    };
    let mut rng = rng_from_seed(seed);
    let mut evaluations = 0usize;
    let mut best_feasible: Option<Evaluation> = None;
    let mut best_penalized: Option<Evaluation> = None;
    let mut history = Vec::new();
    let per_restart = (budget / 5).max(50 * (n + 1));

    while evaluations < budget {
        let restart = history.len();
        let (start, step) = match (restart, &best_penalized) {
            (0, _) => (vec![0.0; n], 0.5 * scale),
            (r, Some(best)) if r % 2 == 1 => (best.coefficients.clone(), 0.05 * scale),
            _ => (
                (0..n).map(|_| rng.random_range(-scale..=scale)).collect(),
                0.5 * scale,
            ),
        };
        let opts = NelderMeadOptions {
            initial_step: step,
            max_evaluations: per_restart.min(budget - evaluations),
            f_tolerance: 1e-12,
            x_tolerance: 1e-10 * scale,
        };
        let outcome = nelder_mead::minimize(
            |theta| {
                let e = evaluate(fixed, param, theta, delta);
                if e.fid_a <= delta && e.fid_b <= delta {
                    let better = best_feasible
                        .as_ref()
                        .is_none_or(|b| e.norm_int < b.norm_int);
                    if better {
                        best_feasible = Some(e.clone());
                    }
                }
                if best_penalized
                    .as_ref()
                    .is_none_or(|b| e.objective < b.objective)
                {
                    best_penalized = Some(e.clone());
                }
                e.objective
            },
            &start,
            &opts,
        );
        evaluations += outcome.evaluations;
        history.push(best_feasible.as_ref().map(|b| b.norm_int));
    }

    let (best, feasible) = match best_feasible {
        Some(b) => (b, true),
        None => (best_penalized.expect("budget >= 1 evaluates once"), false),
    };
    if feasible {
        let bound = lhs - (norm_a + norm_b) * delta - COROLLARY_TOL;
        if 2.0 * best.norm_int < bound {
            return Err(Error::CorollaryViolation {
                twice_norm: 2.0 * best.norm_int,
                bound,
            });
        }
    }
    Ok(OptimizationResult {
        best_coefficients: best.coefficients,
        best_norm_int: best.norm_int,
        achieved_fid_a: best.fid_a,
        achieved_fid_b: best.fid_b,
        feasible,
        corollary_lower_bound: lower_bound,
        evaluations,
        lhs,
        delta,
        restarts: history.len(),
        best_norm_by_restart: history,
    })
}

fn evaluate(
    fixed: &FixedParts,
    param: &InteractionParametrization,
    theta: &[f64],
    delta: f64,
) -> Evaluation {
    let h_int = param.interaction(theta);
    let norm_int = operator_norm(&h_int);
    let fids = fixed
        .with_interaction(h_int)
        .and_then(|s| evolve_scenario(&s))
        .and_then(|st| {
            Ok((
                fidelity(&st.rho0_a, &st.rho1_a)?,
                fidelity(&st.rho0_b, &st.rho1_b)?,
            ))
        });
    let (fid_a, fid_b, objective) = match fids {
        Ok((fa, fb)) => {
            let pa = (fa - delta).max(0.0);
            let pb = (fb - delta).max(0.0);
            (fa, fb, norm_int + PENALTY_WEIGHT * (pa * pa + pb * pb))
        }
        Err(_) => (1.0, 1.0, f64::INFINITY),
    };
    Evaluation {
        coefficients: theta.to_vec(),
        norm_int,
        fid_a,
        fid_b,
        objective,
    }
}
