//! Random scenario ensembles and slack statistics over them.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::CompositeDims;
use crate::random::{
    derive_seed, random_density, random_hermitian, random_orthonormal_pair, rng_from_seed,
    unitary_commuting_with,
};
use crate::tradeoff::{
    check_tradeoff_with, CheckOptions, ConservedTriple, Evolution, Scenario, DEFAULT_SLACK_TOL,
};

/// Random scenario evolving under `exp(-iHT)` with `H` its own triple.
///
/// Draw order from `seed`: `H_A`, `H_B`, `H_int`, the encoding pair,
/// `sigma`, then `T` uniform in `time_range`.
pub fn random_scenario(dims: CompositeDims, seed: u64, time_range: (f64, f64)) -> Result<Scenario> {
    check_random_dims(dims)?;
    let (t0, t1) = check_time_range(time_range)?;
    let mut rng = rng_from_seed(seed);
    let conserved = ConservedTriple::new(
        random_hermitian(dims.a, &mut rng),
        random_hermitian(dims.b, &mut rng),
        random_hermitian(dims.total(), &mut rng),
    )?;
    let (psi0, psi1) = random_orthonormal_pair(dims.a, &mut rng);
    let sigma = random_density(dims.b, &mut rng);
    let time = if t1 > t0 {
        rng.random_range(t0..t1)
    } else {
        t0
    };
    Scenario::new(
        dims,
        conserved,
        psi0,
        psi1,
        sigma,
        time,
        Evolution::Generated,
    )
}

/// Random scenario with an explicit unitary that is a function of a random
/// conserved quantity `L`, so `U L U^dagger = L` holds exactly.
///
/// Draw order: `L_A`, `L_B`, `L_int`, the encoding pair, `sigma`, then one
/// phase per distinct eigenvalue of `L`.
pub fn random_conserving_scenario(dims: CompositeDims, seed: u64) -> Result<Scenario> {
    check_random_dims(dims)?;
    let mut rng = rng_from_seed(seed);
    let conserved = ConservedTriple::new(
        random_hermitian(dims.a, &mut rng),
        random_hermitian(dims.b, &mut rng),
        random_hermitian(dims.total(), &mut rng),
    )?;
    let (psi0, psi1) = random_orthonormal_pair(dims.a, &mut rng);
    let sigma = random_density(dims.b, &mut rng);
    let l = conserved.total(dims)?;
    let u = unitary_commuting_with(&l, &mut rng);
    Scenario::new(
        dims,
        conserved,
        psi0,
        psi1,
        sigma,
        0.0,
        Evolution::Explicit(u),
    )
}

fn check_random_dims(dims: CompositeDims) -> Result<()> {
    if dims.a < 2 {
        return Err(Error::InvalidArgument(
            "system A needs dimension at least 2 to hold an orthogonal encoding".into(),
        ));
    }
    Ok(())
}

fn check_time_range((t0, t1): (f64, f64)) -> Result<(f64, f64)> {
    if !(t0.is_finite() && t1.is_finite() && t0 >= 0.0 && t1 >= t0) {
        return Err(Error::InvalidArgument(format!(
            "invalid time range [{t0}, {t1}]"
        )));
    }
    Ok((t0, t1))
}

/// Which ensemble a sweep draws from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    /// [`random_scenario`]: Hamiltonian evolution, `L = H`.
    #[default]
    Generated,
    /// [`random_conserving_scenario`]: explicit unitary conserving a random `L`.
    Conserving,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    /// Instance `i` uses `dims[i % dims.len()]`.
    pub dims: Vec<CompositeDims>,
    pub count: usize,
    pub root_seed: u64,
    pub time_range: (f64, f64),
    pub kind: SweepKind,
    pub slack_tolerance: f64,
}

impl SweepConfig {
    pub fn new(dims: Vec<CompositeDims>, count: usize, root_seed: u64, tmax: f64) -> Self {
        Self {
            dims,
            count,
            root_seed,
            time_range: (0.0, tmax),
            kind: SweepKind::Generated,
            slack_tolerance: DEFAULT_SLACK_TOL,
        }
    }
}

/// One instance of a sweep; field order matches the CSV columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub seed: u64,
    pub dim_a: usize,
    pub dim_b: usize,
    pub time: f64,
    pub lhs: f64,
    pub fid_a: f64,
    pub fid_b: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub norm_int: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n_instances: usize,
    pub min_slack: f64,
    pub mean_slack: f64,
    /// Instances with `slack < -tolerance`; must be zero.
    pub violations: usize,
    /// In instance order.
    pub rows: Vec<SweepRow>,
}

/// Evaluates the bound on `config.count` random instances in parallel.
/// Instance `i` is seeded with `derive_seed(root_seed, i)`; rows come back
/// in instance order regardless of scheduling.
pub fn sweep_slack(config: &SweepConfig) -> Result<SweepSummary> {
    if config.count == 0 {
        return Err(Error::InvalidArgument(
            "instance count must be at least 1".into(),
        ));
    }
    if config.dims.is_empty() {
        return Err(Error::InvalidArgument("no dimensions to sweep".into()));
    }
    check_time_range(config.time_range)?;
    let opts = CheckOptions {
        slack_tolerance: config.slack_tolerance,
        ..CheckOptions::default()
    };
    let rows = (0..config.count)
        .into_par_iter()
        .map(|i| {
            let dims = config.dims[i % config.dims.len()];
            let seed = derive_seed(config.root_seed, i as u64);
            let s = match config.kind {
                SweepKind::Generated => random_scenario(dims, seed, config.time_range)?,
                SweepKind::Conserving => random_conserving_scenario(dims, seed)?,
            };
            let r = check_tradeoff_with(&s, &opts)?;
            Ok(SweepRow {
                seed,
                dim_a: dims.a,
                dim_b: dims.b,
                time: s.time,
                lhs: r.lhs,
                fid_a: r.fid_a,
                fid_b: r.fid_b,
                norm_a: r.norm_a,
                norm_b: r.norm_b,
                norm_int: r.norm_int,
                rhs: r.rhs,
                slack: r.slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_slack = rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let mean_slack = rows.iter().map(|r| r.slack).sum::<f64>() / rows.len() as f64;
    let violations = rows
        .iter()
        .filter(|r| r.slack < -config.slack_tolerance)
        .count();
    Ok(SweepSummary {
        n_instances: rows.len(),
        min_slack,
        mean_slack,
        violations,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::random::random_density;
    use crate::tradeoff::{check_energy_tradeoff, check_tradeoff};

    #[test]
    fn random_scenario_is_deterministic() {
        let dims = CompositeDims::new(3, 2).unwrap();
        let a = random_scenario(dims, 42, (0.0, 20.0)).unwrap();
        assert_eq!(a, random_scenario(dims, 42, (0.0, 20.0)).unwrap());
        assert!(check_energy_tradeoff(&a).unwrap().holds);
    }

    #[test]
    fn conserving_scenario_conserves() {
        let dims = CompositeDims::new(2, 3).unwrap();
        let s = random_conserving_scenario(dims, 5).unwrap();
        let r = check_tradeoff(&s).unwrap();
        assert!(r.conservation_residual < 1e-10);
        assert!(r.holds);
    }

    #[test]
    fn single_instance_sweep_repeats() {
        let cfg = SweepConfig::new(vec![CompositeDims::new(2, 2).unwrap()], 1, 7, 20.0);
        assert_eq!(sweep_slack(&cfg).unwrap(), sweep_slack(&cfg).unwrap());
    }

    #[test]
    fn sweep_rejects_empty_config() {
        let cfg = SweepConfig::new(vec![CompositeDims::new(2, 2).unwrap()], 0, 7, 20.0);
        assert!(sweep_slack(&cfg).is_err());
    }

    #[test]
    fn commuting_encoding_without_interaction_has_zero_lhs() {
        // encodings are eigenvectors of a diagonal H_A and H_int = 0
        let mut rng = rng_from_seed(3);
        for dim_b in 2..4 {
            let dims = CompositeDims::new(3, dim_b).unwrap();
            let conserved = ConservedTriple::new(
                ComplexMatrix::from_real_diagonal(&[0.3, -1.2, 2.0]),
                random_hermitian(dim_b, &mut rng),
                ComplexMatrix::zeros(dims.total()),
            )
            .unwrap();
            let s = Scenario::new(
                dims,
                conserved,
                crate::qstate::PureState::basis(3, 0).unwrap(),
                crate::qstate::PureState::basis(3, 2).unwrap(),
                random_density(dim_b, &mut rng),
                rng.random_range(0.0..20.0),
                Evolution::Generated,
            )
            .unwrap();
            let r = check_energy_tradeoff(&s).unwrap();
            assert_eq!(r.lhs, 0.0);
            assert!((r.slack - r.rhs).abs() < 1e-15 && r.rhs >= 0.0);
        }
    }
}
