//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line to
//! stderr (bypassing output capture) and then asserts.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use infodist::fidelity::{fidelity, optimal_pvm, povm_overlap, random_pvm};
use infodist::linalg::{hermitian_sqrt, matrix_exp_hermitian, operator_norm};
use infodist::optimizer::basis::{BasisRegistry, MatchedProjector};
use infodist::optimizer::{
    minimize_interaction, sweep_slack, FixedParts, InteractionParametrization, SweepConfig,
    SweepKind,
};
use infodist::qstate::{embed, partial_trace, partial_trace_matrix, purify, CompositeDims, Side};
use infodist::random::{
    derive_seed, gaussian_matrix, random_density, random_hermitian, random_orthonormal_pair,
    rng_from_seed,
};
use infodist::tradeoff::{
    build_spin_demo, check_energy_tradeoff, nogo_verdict, noncomm_identity, spin_demo_perfect_time,
    Verdict,
};
use rand::Rng;

fn report(id: &str, title: &str, ok: bool, detail: &str, elapsed: Duration, limit: Duration) {
    let status = if ok && elapsed < limit {
        "PASS"
    } else {
        "FAIL"
    };
    let _ = writeln!(
        std::io::stderr(),
        "[{status}] {id} {title}: {detail} ({:.3}s, limit {}s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
}

fn finish(id: &str, title: &str, ok: bool, detail: String, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    report(id, title, ok, &detail, elapsed, limit);
    assert!(ok, "{id} failed: {detail}");
    assert!(elapsed < limit, "{id} exceeded its time limit: {elapsed:?}");
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn ac1_spin_demo_reproduction() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for eps in [1.0, 0.1, 0.01] {
        let s =
            build_spin_demo(c(1.0, 0.0), c(0.0, 0.0), eps, spin_demo_perfect_time(eps)).unwrap();
        let r = check_energy_tradeoff(&s).unwrap();
        let norm_ok = (r.norm_int - eps).abs() < 1e-12;
        let pass = r.fid_a < 1e-9
            && r.fid_b < 1e-9
            && norm_ok
            && nogo_verdict(&r) == Verdict::Allowed
            && r.holds;
        ok &= pass;
        detail.push(format!(
            "eps={eps}: F_A={:.1e} F_B={:.1e} ||H_int||={}",
            r.fid_a, r.fid_b, r.norm_int
        ));
    }
    finish(
        "AC1",
        "spin-demo reproduction",
        ok,
        detail.join("; "),
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn ac2_encoding_noncommutativity_grid() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    // 5 magnitudes x 4 phase pairs
    for k in 0..5 {
        let theta = (k as f64 + 0.5) * PI / 10.0;
        for (pa, pb) in [(0.0, 0.0), (0.7, -1.3), (PI / 2.0, PI), (2.9, 0.4)] {
            let alpha = Complex64::from_polar(theta.cos(), pa);
            let beta = Complex64::from_polar(theta.sin(), pb);
            let s = build_spin_demo(alpha, beta, 0.1, 1.0).unwrap();
            let lhs = s.lhs().unwrap();
            worst = worst.max((lhs - (alpha * beta).norm()).abs());
            count += 1;
        }
    }
    finish(
        "AC2",
        "encoding noncommutativity lhs = |alpha beta|",
        count == 20 && worst < 1e-12,
        format!("{count} pairs, max error {worst:.1e}"),
        start,
        Duration::from_secs(1),
    );
}

fn all_dims() -> Vec<CompositeDims> {
    let mut v = Vec::new();
    for a in 2..=4 {
        for b in 2..=4 {
            v.push(CompositeDims::new(a, b).unwrap());
        }
    }
    v
}

#[test]
fn ac3_energy_bound_monte_carlo() {
    let start = Instant::now();
    let cfg = SweepConfig::new(all_dims(), 1008, 2024, 20.0);
    let s = sweep_slack(&cfg).unwrap();
    finish(
        "AC3",
        "Hamiltonian bound on random scenarios",
        s.n_instances >= 1000 && s.violations == 0 && s.min_slack >= -1e-8,
        format!(
            "{} instances, {} violations, min slack {:.3e}",
            s.n_instances, s.violations, s.min_slack
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn ac4_conserved_quantity_bound() {
    let start = Instant::now();
    let mut cfg = SweepConfig::new(all_dims(), 216, 77, 0.0);
    cfg.kind = SweepKind::Conserving;
    let s = sweep_slack(&cfg).unwrap();
    finish(
        "AC4",
        "bound for explicit unitaries conserving a random L",
        s.n_instances >= 200 && s.violations == 0,
        format!(
            "{} instances, {} violations, min slack {:.3e}",
            s.n_instances, s.violations, s.min_slack
        ),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn ac5_minimal_measurement_overlap() {
    let start = Instant::now();
    let mut lower_violations = 0;
    let mut worst_gap: f64 = 0.0;
    let mut pairs = 0;
    for i in 0..120u64 {
        let dim = 2 + (i % 3) as usize;
        let mut rng = rng_from_seed(derive_seed(5, i));
        let a = random_density(dim, &mut rng);
        let b = random_density(dim, &mut rng);
        let f = fidelity(&a, &b).unwrap();
        for j in 0..200u64 {
            let outcomes = 1 + (j as usize % dim);
            let pvm = random_pvm(dim, outcomes, derive_seed(1000 + i, j)).unwrap();
            if povm_overlap(&a, &b, &pvm).unwrap() < f - 1e-9 {
                lower_violations += 1;
            }
        }
        let best = optimal_pvm(&a, &b).unwrap();
        worst_gap = worst_gap.max((povm_overlap(&a, &b, &best).unwrap() - f).abs());
        pairs += 1;
    }
    finish(
        "AC5",
        "fidelity is the minimal measurement overlap, attained by a PVM",
        pairs >= 100 && lower_violations == 0 && worst_gap < 1e-7,
        format!(
            "{pairs} pairs x 200 PVMs, {lower_violations} below fidelity, max attainment gap {worst_gap:.1e}"
        ),
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn ac6_noncommutator_identity() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let n = 500;
    for i in 0..n as u64 {
        let dim = 2 + (i % 5) as usize;
        let mut rng = rng_from_seed(derive_seed(6, i));
        let (p0, p1) = random_orthonormal_pair(dim, &mut rng);
        let l = random_hermitian(dim, &mut rng);
        worst = worst.max(noncomm_identity(&p0, &p1, &l).unwrap().identity_residual);
    }
    finish(
        "AC6",
        "tr(N0 N1 E0) = |<psi0|L_A|psi1>|^2",
        worst < 1e-10,
        format!("{n} instances, max residual {worst:.1e}"),
        start,
        Duration::from_secs(30),
    );
}

fn spin_fixed(alpha: f64, beta: f64, time: f64) -> FixedParts {
    let s = build_spin_demo(c(alpha, 0.0), c(beta, 0.0), 1.0, time).unwrap();
    FixedParts::from_scenario(&s)
}

#[test]
fn ac7_optimizer_respects_the_no_go_bound() {
    let start = Instant::now();
    let time = 5.0 * PI;
    let delta = 0.01;

    let hard = spin_fixed(FRAC_1_SQRT_2, FRAC_1_SQRT_2, time);
    let norm_sum = operator_norm(&hard.h_a) + operator_norm(&hard.h_b);
    let bound = 0.5 - norm_sum * delta - 1e-6;
    let registry = BasisRegistry::with_builtins();
    let mut feasible_runs = 0;
    let mut runs = 0;
    let mut consistent = true;
    for basis in registry.iter() {
        let param = InteractionParametrization::from_basis(basis, hard.dims).unwrap();
        for seed in 0..2 {
            let r = minimize_interaction(&hard, &param, delta, 5000, seed).unwrap();
            runs += 1;
            if r.feasible {
                feasible_runs += 1;
                consistent &= 2.0 * r.best_norm_int >= bound;
            }
        }
    }

    let easy = spin_fixed(1.0, 0.0, time);
    let param = InteractionParametrization::from_basis(&MatchedProjector, easy.dims).unwrap();
    let witness = minimize_interaction(&easy, &param, 1e-3, 5000, 0).unwrap();
    let found = witness.feasible && witness.best_norm_int <= 0.11;

    finish(
        "AC7",
        "optimizer output consistent with the no-go bound",
        consistent && found,
        format!(
            "alpha=beta=1/sqrt2: {feasible_runs}/{runs} runs feasible, all >= bound {bound:.4}; \
             alpha=1: best ||H_int|| = {:.6} (feasible {})",
            witness.best_norm_int, witness.feasible
        ),
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn ac8_kernel_numerics() {
    let start = Instant::now();
    let n = 1000u64;
    let (mut unitary, mut sqrt_sq, mut purif, mut reduce): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        let mut rng = rng_from_seed(derive_seed(8, i));
        let dim = 2 + (i % 5) as usize;

        let h = random_hermitian(dim, &mut rng);
        let t = rng.random_range(0.0..10.0);
        let u = matrix_exp_hermitian(&h, c(0.0, -t)).unwrap();
        unitary = unitary.max(u.unitarity_deviation());

        let g = gaussian_matrix(dim, &mut rng);
        let p = (&g * &g.adjoint()).hermitian_part();
        let r = hermitian_sqrt(&p).unwrap();
        sqrt_sq = sqrt_sq.max((&(&r * &r) - &p).frobenius_norm() / p.frobenius_norm());

        let sigma = random_density(dim, &mut rng);
        let omega = purify(&sigma).unwrap();
        let env = CompositeDims::new(dim, dim).unwrap();
        let back = partial_trace(&omega.to_density(), env, Side::A).unwrap();
        purif = purif.max(back.matrix().max_abs_diff(sigma.matrix()));

        let dims = CompositeDims::new(2 + (i % 3) as usize, 2 + (i % 2) as usize).unwrap();
        let rho = random_density(dims.total(), &mut rng);
        let x = gaussian_matrix(dims.a, &mut rng);
        let full = (&embed(&x, Side::A, dims).unwrap() * rho.matrix()).trace();
        let reduced = partial_trace_matrix(rho.matrix(), dims, Side::A).unwrap();
        let local = (&x * &reduced).trace();
        reduce = reduce.max((full - local).norm());
    }
    finish(
        "AC8",
        "kernel numerics",
        unitary < 1e-10 && sqrt_sq < 1e-9 && purif < 1e-10 && reduce < 1e-10,
        format!(
            "{n} instances: unitarity {unitary:.1e}, sqrt^2 {sqrt_sq:.1e}, purification {purif:.1e}, reduction {reduce:.1e}"
        ),
        start,
        Duration::from_secs(60),
    );
}
