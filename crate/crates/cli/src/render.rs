use std::fmt::Write;

use infodist::document::{ReportBody, ReportDocument};
use infodist::optimizer::SweepSummary;

pub const CSV_HEADER: &str =
    "seed,dim_a,dim_b,time,lhs,fid_a,fid_b,norm_a,norm_b,norm_int,rhs,slack";

/// CSV with header, LF line endings, shortest round-trip float formatting.
pub fn sweep_csv(summary: &SweepSummary) -> String {
    let mut out = String::with_capacity(64 * (summary.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &summary.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.seed,
            r.dim_a,
            r.dim_b,
            r.time,
            r.lhs,
            r.fid_a,
            r.fid_b,
            r.norm_a,
            r.norm_b,
            r.norm_int,
            r.rhs,
            r.slack
        );
    }
    out
}

pub fn sweep_summary_line(s: &SweepSummary) -> String {
    format!(
        "instances={} min_slack={:e} mean_slack={:e} violations={}",
        s.n_instances, s.min_slack, s.mean_slack, s.violations
    )
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<24} {value}");
}

pub fn table(doc: &ReportDocument) -> String {
    let mut out = String::new();
    match &doc.report {
        ReportBody::Check(c) => {
            let r = &c.report;
            row(&mut out, "mode", format!("{:?}", c.mode).to_lowercase());
            row(&mut out, "lhs |<psi0|L_A|psi1>|", r.lhs);
            row(&mut out, "F(rho0_A, rho1_A)", r.fid_a);
            row(&mut out, "F(rho0_B, rho1_B)", r.fid_b);
            row(&mut out, "||L_A||", r.norm_a);
            row(&mut out, "||L_B||", r.norm_b);
            row(&mut out, "||L_int||", r.norm_int);
            row(&mut out, "rhs", r.rhs);
            row(&mut out, "slack", r.slack);
            row(&mut out, "conservation residual", r.conservation_residual);
            row(&mut out, "holds", r.holds);
            row(
                &mut out,
                "verdict",
                format!("{:?}", c.verdict).to_lowercase(),
            );
        }
        ReportBody::Noncomm(n) => {
            row(&mut out, "tr(N0 N1 E0)", n.trace_form);
            row(&mut out, "<psi0|N0 N1|psi0>", n.sandwich_form);
            row(&mut out, "|<psi0|L_A|psi1>|^2", n.lhs_squared);
            row(&mut out, "identity residual", n.identity_residual);
        }
        ReportBody::Sweep(s) => {
            row(&mut out, "instances", s.n_instances);
            row(&mut out, "min slack", s.min_slack);
            row(&mut out, "mean slack", s.mean_slack);
            row(&mut out, "violations", s.violations);
        }
        ReportBody::Optimization(o) => {
            row(&mut out, "feasible", o.feasible);
            row(&mut out, "best ||H_int||", o.best_norm_int);
            row(&mut out, "no-go lower bound", o.corollary_lower_bound);
            row(&mut out, "F_A achieved", o.achieved_fid_a);
            row(&mut out, "F_B achieved", o.achieved_fid_b);
            row(&mut out, "lhs", o.lhs);
            row(&mut out, "delta", o.delta);
            row(&mut out, "evaluations", o.evaluations);
            row(&mut out, "restarts", o.restarts);
        }
    }
    out
}
