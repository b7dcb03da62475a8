//! Trade-off between interaction strength, encoding noncommutativity and
//! post-interaction distinguishability.
//!
//! A bit is encoded in orthogonal pure states `psi0`, `psi1` of system `A`,
//! system `B` starts in `sigma`, and the pair evolves under a unitary `U`
//! that conserves `L = L_A + L_B + L_int`. The checked bound is
//!
//! ```text
//! |<psi0|L_A|psi1>| <= ||L_B|| F(rho0_A, rho1_A) + ||L_A|| F(rho0_B, rho1_B) + 2 ||L_int||
//! ```
//!
//! When `U = exp(-iHT)` the Hamiltonian itself plays the role of `L`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fidelity::fidelity;
use crate::linalg::{matrix_exp_hermitian, operator_norm, tensor_product, ComplexMatrix};
use crate::qstate::{
    embed, evolve, partial_trace, CompositeDims, DensityOperator, PureState, Side, NORM_TOL,
    UNITARY_TOL,
};

/// Tolerance on `<psi0|psi1> = 0`.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Default slack tolerance for `holds`.
pub const DEFAULT_SLACK_TOL: f64 = 1e-8;

/// Default tolerance on `||U L U^dagger - L||`.
pub const DEFAULT_CONSERVATION_TOL: f64 = 1e-6;

/// `L = L_A (x) 1 + 1 (x) L_B + L_int`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservedTriple {
    pub part_a: ComplexMatrix,
    pub part_b: ComplexMatrix,
    pub part_int: ComplexMatrix,
}

impl ConservedTriple {
    pub fn new(
        part_a: ComplexMatrix,
        part_b: ComplexMatrix,
        part_int: ComplexMatrix,
    ) -> Result<Self> {
        part_a.ensure_hermitian()?;
        part_b.ensure_hermitian()?;
        part_int.ensure_hermitian()?;
        Ok(Self {
            part_a,
            part_b,
            part_int,
        })
    }

    fn check_dims(&self, dims: CompositeDims) -> Result<()> {
        for (m, expected, context) in [
            (&self.part_a, dims.a, "part on A"),
            (&self.part_b, dims.b, "part on B"),
            (&self.part_int, dims.total(), "interaction part"),
        ] {
            if m.dim() != expected {
                return Err(Error::DimensionMismatch {
                    context,
                    expected,
                    found: m.dim(),
                });
            }
        }
        Ok(())
    }

    /// The full operator on `A (x) B`.
    pub fn total(&self, dims: CompositeDims) -> Result<ComplexMatrix> {
        self.check_dims(dims)?;
        let a = embed(&self.part_a, Side::A, dims)?;
        let b = embed(&self.part_b, Side::B, dims)?;
        Ok(&(&a + &b) + &self.part_int)
    }

    pub fn norms(&self) -> (f64, f64, f64) {
        (
            operator_norm(&self.part_a),
            operator_norm(&self.part_b),
            operator_norm(&self.part_int),
        )
    }
}

/// How the composite system evolves.
#[derive(Clone, Debug, PartialEq)]
pub enum Evolution {
    /// `U = exp(-iHT)` with `H` the total of the scenario's triple.
    Generated,
    /// A user-supplied unitary; the triple is then a conserved quantity that
    /// is checked, not assumed.
    Explicit(ComplexMatrix),
}

/// A complete experiment description.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub dims: CompositeDims,
    pub conserved: ConservedTriple,
    pub psi0: PureState,
    pub psi1: PureState,
    pub sigma: DensityOperator,
    pub time: f64,
    pub evolution: Evolution,
}

impl Scenario {
    pub fn new(
        dims: CompositeDims,
        conserved: ConservedTriple,
        psi0: PureState,
        psi1: PureState,
        sigma: DensityOperator,
        time: f64,
        evolution: Evolution,
    ) -> Result<Self> {
        conserved.check_dims(dims)?;
        for (psi, context) in [(&psi0, "psi0"), (&psi1, "psi1")] {
            if psi.dim() != dims.a {
                return Err(Error::DimensionMismatch {
                    context,
                    expected: dims.a,
                    found: psi.dim(),
                });
            }
        }
        if sigma.dim() != dims.b {
            return Err(Error::DimensionMismatch {
                context: "sigma",
                expected: dims.b,
                found: sigma.dim(),
            });
        }
        let overlap = psi0.inner(&psi1)?.norm();
        if overlap > ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal { overlap });
        }
        if !(time.is_finite() && time >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time must be finite and nonnegative, got {time}"
            )));
        }
        if let Evolution::Explicit(u) = &evolution {
            if u.dim() != dims.total() {
                return Err(Error::DimensionMismatch {
                    context: "unitary",
                    expected: dims.total(),
                    found: u.dim(),
                });
            }
            u.ensure_unitary(UNITARY_TOL)?;
        }
        Ok(Self {
            dims,
            conserved,
            psi0,
            psi1,
            sigma,
            time,
            evolution,
        })
    }

    pub fn is_generated(&self) -> bool {
        matches!(self.evolution, Evolution::Generated)
    }

    /// The evolution operator `U`.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        match &self.evolution {
            Evolution::Generated => {
                let h = self.conserved.total(self.dims)?;
                matrix_exp_hermitian(&h, Complex64::new(0.0, -self.time))
            }
            Evolution::Explicit(u) => Ok(u.clone()),
        }
    }

    /// `|<psi0|L_A|psi1>|`.
    pub fn lhs(&self) -> Result<f64> {
        Ok(self
            .conserved
            .part_a
            .sandwich(self.psi0.amplitudes(), self.psi1.amplitudes())?
            .norm())
    }
}

/// Joint and reduced final states for both encoded bits.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolvedStates {
    pub rho0: DensityOperator,
    pub rho1: DensityOperator,
    pub rho0_a: DensityOperator,
    pub rho1_a: DensityOperator,
    pub rho0_b: DensityOperator,
    pub rho1_b: DensityOperator,
}

/// `rho_j = U (|psi_j><psi_j| (x) sigma) U^dagger` and its reductions.
pub fn evolve_scenario(s: &Scenario) -> Result<EvolvedStates> {
    let u = s.unitary()?;
    evolve_with(s, &u)
}

fn evolve_with(s: &Scenario, u: &ComplexMatrix) -> Result<EvolvedStates> {
    let rho0 = evolve(&s.psi0.to_density().tensor(&s.sigma)?, u)?;
    let rho1 = evolve(&s.psi1.to_density().tensor(&s.sigma)?, u)?;
    Ok(EvolvedStates {
        rho0_a: partial_trace(&rho0, s.dims, Side::A)?,
        rho1_a: partial_trace(&rho1, s.dims, Side::A)?,
        rho0_b: partial_trace(&rho0, s.dims, Side::B)?,
        rho1_b: partial_trace(&rho1, s.dims, Side::B)?,
        rho0,
        rho1,
    })
}

/// Tolerances for [`check_tradeoff_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckOptions {
    /// `holds` is `slack >= -slack_tolerance`.
    pub slack_tolerance: f64,
    /// Largest accepted `||U L U^dagger - L||`.
    pub conservation_tolerance: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            slack_tolerance: DEFAULT_SLACK_TOL,
            conservation_tolerance: DEFAULT_CONSERVATION_TOL,
        }
    }
}

/// Every term of the bound for one scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub lhs: f64,
    pub fid_a: f64,
    pub fid_b: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub norm_int: f64,
    pub rhs: f64,
    pub slack: f64,
    pub conservation_residual: f64,
    pub holds: bool,
}

impl TradeoffReport {
    /// Assembles the report; `rhs = norm_b fid_a + norm_a fid_b + 2 norm_int`.
    #[allow(clippy::too_many_arguments)]
    pub fn compose(
        lhs: f64,
        fid_a: f64,
        fid_b: f64,
        norm_a: f64,
        norm_b: f64,
        norm_int: f64,
        conservation_residual: f64,
        slack_tolerance: f64,
    ) -> Self {
        let rhs = norm_b * fid_a + norm_a * fid_b + 2.0 * norm_int;
        let slack = rhs - lhs;
        Self {
            lhs,
            fid_a,
            fid_b,
            norm_a,
            norm_b,
            norm_int,
            rhs,
            slack,
            conservation_residual,
            holds: slack >= -slack_tolerance,
        }
    }

    /// Both final fidelities at most `delta`.
    pub fn distributes_within(&self, delta: f64) -> bool {
        self.fid_a <= delta && self.fid_b <= delta
    }
}

/// Checks the bound for an arbitrary conserved quantity.
pub fn check_tradeoff(s: &Scenario) -> Result<TradeoffReport> {
    check_tradeoff_with(s, &CheckOptions::default())
}

pub fn check_tradeoff_with(s: &Scenario, opts: &CheckOptions) -> Result<TradeoffReport> {
    let u = s.unitary()?;
    let l = s.conserved.total(s.dims)?;
    let conserved = &(&(&u * &l) * &u.adjoint()) - &l;
    let residual = operator_norm(&conserved);
    if residual > opts.conservation_tolerance {
        return Err(Error::ConservationViolated { residual });
    }
    let states = evolve_with(s, &u)?;
    let fid_a = fidelity(&states.rho0_a, &states.rho1_a)?;
    let fid_b = fidelity(&states.rho0_b, &states.rho1_b)?;
    let (norm_a, norm_b, norm_int) = s.conserved.norms();
    Ok(TradeoffReport::compose(
        s.lhs()?,
        fid_a,
        fid_b,
        norm_a,
        norm_b,
        norm_int,
        residual,
        opts.slack_tolerance,
    ))
}

/// The bound with `L = H`; only Hamiltonian-generated scenarios qualify.
pub fn check_energy_tradeoff(s: &Scenario) -> Result<TradeoffReport> {
    check_energy_tradeoff_with(s, &CheckOptions::default())
}

pub fn check_energy_tradeoff_with(s: &Scenario, opts: &CheckOptions) -> Result<TradeoffReport> {
    if !s.is_generated() {
        return Err(Error::ExplicitEvolution);
    }
    check_tradeoff_with(s, opts)
}

/// Outcome of the no-go test on a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// `2 ||L_int|| < lhs`: perfect distribution is impossible.
    Forbidden,
    /// No obstruction from the bound (achievability is not claimed).
    Allowed,
}

pub fn nogo_verdict(r: &TradeoffReport) -> Verdict {
    if 2.0 * r.norm_int < r.lhs {
        Verdict::Forbidden
    } else {
        Verdict::Allowed
    }
}

/// Smallest `||L_int||` compatible with both fidelities at most `delta`:
/// `max(0, (lhs - (||L_A|| + ||L_B||) delta) / 2)`.
pub fn interaction_lower_bound(lhs: f64, norm_a: f64, norm_b: f64, delta: f64) -> f64 {
    ((lhs - (norm_a + norm_b) * delta) / 2.0).max(0.0)
}

/// Noncommutators `N_j = [E_j, L_A]` and the identity
/// `tr(N0 N1 E0) = |<psi0|L_A|psi1>|^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoncommReport {
    pub n0: ComplexMatrix,
    pub n1: ComplexMatrix,
    /// `tr(N0 N1 E0)`.
    pub trace_form: Complex64,
    /// `<psi0|N0 N1|psi0>`.
    pub sandwich_form: Complex64,
    /// `|<psi0|L_A|psi1>|^2`.
    pub lhs_squared: f64,
    pub identity_residual: f64,
}

pub fn noncomm_identity(
    psi0: &PureState,
    psi1: &PureState,
    l_a: &ComplexMatrix,
) -> Result<NoncommReport> {
    l_a.ensure_hermitian()?;
    for (psi, context) in [(psi0, "psi0"), (psi1, "psi1")] {
        if psi.dim() != l_a.dim() {
            return Err(Error::DimensionMismatch {
                context,
                expected: l_a.dim(),
                found: psi.dim(),
            });
        }
    }
    let overlap = psi0.inner(psi1)?.norm();
    if overlap > ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal { overlap });
    }
    let e0 = psi0.projector();
    let e1 = psi1.projector();
    let n0 = e0.commutator(l_a);
    let n1 = e1.commutator(l_a);
    let product = &n0 * &n1;
    let trace_form = (&product * &e0).trace();
    let sandwich_form = product.sandwich(psi0.amplitudes(), psi0.amplitudes())?;
    let lhs_squared = l_a
        .sandwich(psi0.amplitudes(), psi1.amplitudes())?
        .norm_sqr();
    let identity_residual = (trace_form - lhs_squared).norm();
    Ok(NoncommReport {
        n0,
        n1,
        trace_form,
        sandwich_form,
        lhs_squared,
        identity_residual,
    })
}

/// Interaction time at which the spin demo distributes the bit perfectly.
pub fn spin_demo_perfect_time(eps: f64) -> f64 {
    std::f64::consts::PI / (2.0 * eps)
}

/// Two spin-1/2 systems, basis order `(|1>, |-1>)`.
///
/// `H_A = S_z`, `H_B = 1`, `H_int = eps (|1><1| (x) |1><1| + |-1><-1| (x) |-1><-1|)`,
/// `psi1 = alpha|1> + beta|-1>`, `psi0 = conj(beta)|1> - conj(alpha)|-1>`,
/// and `B` starts in `(|1> + |-1>)/sqrt(2)`.
pub fn build_spin_demo(alpha: Complex64, beta: Complex64, eps: f64, time: f64) -> Result<Scenario> {
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sqr });
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "interaction strength must be positive, got {eps}"
        )));
    }
    let dims = CompositeDims::new(2, 2)?;
    let up = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
    let down = ComplexMatrix::from_real_diagonal(&[0.0, 1.0]);
    let h_int = (&tensor_product(&up, &up)? + &tensor_product(&down, &down)?).scale_real(eps);
    let conserved = ConservedTriple::new(
        ComplexMatrix::from_real_diagonal(&[0.5, -0.5]),
        ComplexMatrix::identity(2),
        h_int,
    )?;
    let psi1 = PureState::new(vec![alpha, beta])?;
    let psi0 = PureState::new(vec![beta.conj(), -alpha.conj()])?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let omega = PureState::new(vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)])?;
    Scenario::new(
        dims,
        conserved,
        psi0,
        psi1,
        omega.to_density(),
        time,
        Evolution::Generated,
    )
}
