use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_complex::Complex64;

use infodist::document::{CheckMode, CheckOutcome, ReportBody, ReportDocument, ScenarioFile};
use infodist::optimizer::{
    minimize_interaction, random_conserving_scenario, random_scenario, sweep_slack, BasisRegistry,
    InteractionParametrization, SweepConfig, SweepKind,
};
use infodist::tradeoff::{
    build_spin_demo, check_energy_tradeoff_with, check_tradeoff_with, nogo_verdict,
    noncomm_identity, spin_demo_perfect_time, CheckOptions,
};
use infodist::{CompositeDims, Scenario};

use crate::render;
use crate::OutputFormat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

fn read_scenario_file(path: &Path) -> Result<ScenarioFile> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ScenarioFile::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_scenario(path: &Path) -> Result<Scenario> {
    read_scenario_file(path)?
        .to_scenario()
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn put(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(doc: &ReportDocument, format: OutputFormat) {
    if format.table() {
        put(&render::table(doc));
    } else {
        put(&format!("{}\n", doc.to_json()));
    }
}

/// Parses `RE` or `RE,IM`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| anyhow!("invalid number {s:?} in complex value {text:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => bail!("complex values are RE or RE,IM, got {text:?}"),
    }
}

/// Parses `AxB`.
pub fn parse_dims(text: &str) -> Result<CompositeDims> {
    let (a, b) = text
        .trim()
        .split_once(['x', 'X'])
        .ok_or_else(|| anyhow!("dimensions are AxB, got {text:?}"))?;
    let a: usize = a.parse().map_err(|_| anyhow!("invalid dimension {a:?}"))?;
    let b: usize = b.parse().map_err(|_| anyhow!("invalid dimension {b:?}"))?;
    Ok(CompositeDims::new(a, b)?)
}

fn check_outcome(s: &Scenario, tolerance: f64) -> Result<CheckOutcome> {
    let opts = CheckOptions {
        slack_tolerance: tolerance,
        ..CheckOptions::default()
    };
    let (mode, report) = if s.is_generated() {
        (CheckMode::Energy, check_energy_tradeoff_with(s, &opts)?)
    } else {
        (CheckMode::Conserved, check_tradeoff_with(s, &opts)?)
    };
    let verdict = nogo_verdict(&report);
    Ok(CheckOutcome {
        mode,
        report,
        verdict,
    })
}

fn report_check(outcome: CheckOutcome, format: OutputFormat) -> i32 {
    let holds = outcome.report.holds;
    emit(&ReportDocument::new(ReportBody::Check(outcome)), format);
    if holds {
        EXIT_OK
    } else {
        eprintln!("bound violated: this indicates a numerical or implementation error");
        EXIT_VIOLATION
    }
}

pub fn verify(path: &Path, tolerance: f64, format: OutputFormat) -> Result<i32> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        bail!("--tolerance must be a nonnegative number");
    }
    let s = load_scenario(path)?;
    Ok(report_check(check_outcome(&s, tolerance)?, format))
}

fn spin_scenario(alpha: &str, beta: &str, eps: f64, time: Option<f64>) -> Result<Scenario> {
    let alpha = parse_complex(alpha)?;
    let beta = parse_complex(beta)?;
    let time = time.unwrap_or_else(|| spin_demo_perfect_time(eps));
    Ok(build_spin_demo(alpha, beta, eps, time)?)
}

pub fn spin_demo(
    alpha: &str,
    beta: &str,
    eps: f64,
    time: Option<f64>,
    format: OutputFormat,
) -> Result<i32> {
    let s = spin_scenario(alpha, beta, eps, time)?;
    Ok(report_check(
        check_outcome(&s, infodist::tradeoff::DEFAULT_SLACK_TOL)?,
        format,
    ))
}

pub struct SweepArgs {
    pub dims: String,
    pub count: usize,
    pub seed: u64,
    pub tmax: f64,
    pub conserving: bool,
    pub tolerance: f64,
    pub csv: bool,
}

pub fn sweep(args: &SweepArgs, format: OutputFormat) -> Result<i32> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    if !(args.tmax.is_finite() && args.tmax >= 0.0) {
        bail!("--tmax must be a nonnegative number");
    }
    let dims = args
        .dims
        .split(',')
        .map(parse_dims)
        .collect::<Result<Vec<_>>>()?;
    let mut config = SweepConfig::new(dims, args.count, args.seed, args.tmax);
    config.slack_tolerance = args.tolerance;
    if args.conserving {
        config.kind = SweepKind::Conserving;
    }
    let summary = sweep_slack(&config)?;
    let violations = summary.violations;
    if args.csv {
        put(&render::sweep_csv(&summary));
        eprintln!("{}", render::sweep_summary_line(&summary));
    } else {
        emit(&ReportDocument::new(ReportBody::Sweep(summary)), format);
    }
    Ok(if violations > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

pub fn optimize(
    path: &Path,
    delta: f64,
    budget: usize,
    seed: u64,
    basis: &str,
    format: OutputFormat,
) -> Result<i32> {
    if !(delta > 0.0 && delta < 1.0) {
        bail!("--delta must lie strictly between 0 and 1");
    }
    let fixed = read_scenario_file(path)?
        .to_fixed_parts()
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let registry = BasisRegistry::with_builtins();
    let param = InteractionParametrization::from_basis(registry.resolve(basis)?, fixed.dims)?;
    let result = match minimize_interaction(&fixed, &param, delta, budget, seed) {
        Ok(r) => r,
        Err(e @ infodist::Error::CorollaryViolation { .. }) => {
            eprintln!("error: {e}");
            return Ok(EXIT_VIOLATION);
        }
        Err(e) => return Err(e.into()),
    };
    let feasible = result.feasible;
    emit(
        &ReportDocument::new(ReportBody::Optimization(result)),
        format,
    );
    if feasible {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "no feasible interaction found within {budget} evaluations; best attempt reported"
        );
        Ok(EXIT_INFEASIBLE)
    }
}

pub fn noncomm(path: &Path, format: OutputFormat) -> Result<i32> {
    let s = load_scenario(path)?;
    let r = noncomm_identity(&s.psi0, &s.psi1, &s.conserved.part_a)?;
    emit(&ReportDocument::new(ReportBody::Noncomm(r)), format);
    Ok(EXIT_OK)
}

pub fn generate_random(dims: &str, seed: u64, tmax: f64) -> Result<String> {
    let s = random_scenario(parse_dims(dims)?, seed, (0.0, tmax))?;
    Ok(ScenarioFile::from_scenario(&s).to_json())
}

pub fn generate_conserving(dims: &str, seed: u64) -> Result<String> {
    let s = random_conserving_scenario(parse_dims(dims)?, seed)?;
    Ok(ScenarioFile::from_scenario(&s).to_json())
}

pub fn generate_spin(alpha: &str, beta: &str, eps: f64, time: Option<f64>) -> Result<String> {
    let s = spin_scenario(alpha, beta, eps, time)?;
    Ok(ScenarioFile::from_scenario(&s).to_json())
}

pub fn write_output(out: Option<&Path>, text: &str) -> Result<i32> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))
            .with_context(|| format!("cannot write {}", p.display()))?,
        None => put(&format!("{text}\n")),
    }
    Ok(EXIT_OK)
}

pub fn bases() -> Result<i32> {
    for b in BasisRegistry::with_builtins().iter() {
        put(&format!("{:<20} {}\n", b.name(), b.summary()));
    }
    Ok(EXIT_OK)
}
