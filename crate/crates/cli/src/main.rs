//! `infodist` command-line front end.
//!
//! Exit codes: 0 ok, 1 input or usage error, 2 bound violated, 3 optimisation
//! infeasible within budget.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "infodist",
    version,
    about = "Interaction-strength bounds for distributing a classical bit between two quantum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputFormat {
    /// JSON report document (default)
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Human-readable table
    #[arg(long)]
    table: bool,
}

impl OutputFormat {
    pub fn table(&self) -> bool {
        self.table && !self.json
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the bound on a scenario file
    Verify {
        path: PathBuf,
        /// Allowed negative slack before the bound counts as violated
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Run the two-spin example
    SpinDemo {
        /// Amplitude of |1> in psi1, as RE or RE,IM
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Amplitude of |-1> in psi1, as RE or RE,IM
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Interaction strength
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Interaction time [default: pi / (2 eps)]
        #[arg(long)]
        time: Option<f64>,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Check the bound over a seeded random ensemble
    Sweep {
        /// Comma-separated list of AxB dimensions, used round-robin
        #[arg(long, default_value = "2x2,2x3,3x3")]
        dims: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper end of the uniform interaction-time range
        #[arg(long, default_value_t = 20.0)]
        tmax: f64,
        /// Use explicit unitaries conserving a random L instead of exp(-iHT)
        #[arg(long)]
        conserving: bool,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Per-instance CSV rows on stdout, summary on stderr
        #[arg(long, conflicts_with_all = ["json", "table"])]
        csv: bool,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Search for the weakest interaction reaching a target distinguishability
    Optimize {
        /// Scenario file supplying h_a, h_b, psi0, psi1, sigma and time
        path: PathBuf,
        /// Target: both final fidelities at most delta
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Interaction basis (see `infodist bases`)
        #[arg(long, default_value = infodist::optimizer::DEFAULT_BASIS)]
        basis: String,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Evaluate the noncommutator identity for a scenario's encoding
    Noncomm {
        path: PathBuf,
        #[command(flatten)]
        format: OutputFormat,
    },
    /// Write a scenario file
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        /// Output path [default: stdout]
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// List the registered interaction bases
    Bases,
}

#[derive(Subcommand, Debug)]
enum GenerateKind {
    /// Random Hamiltonian scenario
    Random {
        #[arg(long, default_value = "2x2")]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20.0)]
        tmax: f64,
    },
    /// Random explicit unitary conserving a random L
    Conserving {
        #[arg(long, default_value = "2x2")]
        dims: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The two-spin example
    Spin {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        time: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Verify {
            path,
            tolerance,
            format,
        } => commands::verify(&path, tolerance, format),
        Command::SpinDemo {
            alpha,
            beta,
            eps,
            time,
            format,
        } => commands::spin_demo(&alpha, &beta, eps, time, format),
        Command::Sweep {
            dims,
            count,
            seed,
            tmax,
            conserving,
            tolerance,
            csv,
            format,
        } => commands::sweep(
            &commands::SweepArgs {
                dims,
                count,
                seed,
                tmax,
                conserving,
                tolerance,
                csv,
            },
            format,
        ),
        Command::Optimize {
            path,
            delta,
            budget,
            seed,
            basis,
            format,
        } => commands::optimize(&path, delta, budget, seed, &basis, format),
        Command::Noncomm { path, format } => commands::noncomm(&path, format),
        Command::Generate { kind, out } => {
            let generated = match kind {
                GenerateKind::Random { dims, seed, tmax } => {
                    commands::generate_random(&dims, seed, tmax)
                }
                GenerateKind::Conserving { dims, seed } => {
                    commands::generate_conserving(&dims, seed)
                }
                GenerateKind::Spin {
                    alpha,
                    beta,
                    eps,
                    time,
                } => commands::generate_spin(&alpha, &beta, eps, time),
            };
            generated.and_then(|text| commands::write_output(out.as_deref(), &text))
        }
        Command::Bases => commands::bases(),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_INPUT as u8)
        }
    }
}
