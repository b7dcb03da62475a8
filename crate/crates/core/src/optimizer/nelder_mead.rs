//! Budgeted Nelder-Mead simplex minimiser.

/// Options for a single simplex run.
#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex along each axis.
    pub initial_step: f64,
    /// Hard cap on objective evaluations.
    pub max_evaluations: usize,
    /// Stop when the spread of simplex values falls below this...
    pub f_tolerance: f64,
    /// ...and the simplex diameter falls below this.
    pub x_tolerance: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.1,
            max_evaluations: 1000,
            f_tolerance: 1e-12,
            x_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Minimises `f` from `x0`. Non-finite objective values are treated as `+inf`.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evaluations);
    simplex.push((x0.to_vec(), v0));
    for k in 0..n {
        if evaluations >= opts.max_evaluations {
            break;
        }
        let mut x = x0.to_vec();
        x[k] += opts.initial_step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
    }
    if simplex.len() < n + 1 || n == 0 {
        return best_of(simplex, evaluations, false);
    }

    let mut converged = false;
    while evaluations < opts.max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        let spread = if worst.is_finite() {
            (worst - best).abs()
        } else {
            f64::INFINITY
        };
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| max_abs_diff(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if spread <= opts.f_tolerance && diameter <= opts.x_tolerance {
            converged = true;
            break;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let toward = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = toward(REFLECT);
        let fr = eval(&xr, &mut evaluations);
        if fr < simplex[0].1 {
            if evaluations >= opts.max_evaluations {
                simplex[n] = (xr, fr);
                break;
            }
            let xe = toward(REFLECT * EXPAND);
            let fe = eval(&xe, &mut evaluations);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        if evaluations >= opts.max_evaluations {
            break;
        }
        // contraction: outside if the reflection improved on the worst, else inside
        let (xc, fc) = if fr < simplex[n].1 {
            let xc = toward(REFLECT * CONTRACT);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = toward(-CONTRACT);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < simplex[n].1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            if evaluations >= opts.max_evaluations {
                break;
            }
            let x: Vec<f64> = anchor
                .iter()
                .zip(&vertex.0)
                .map(|(a, v)| a + SHRINK * (v - a))
                .collect();
            let v = eval(&x, &mut evaluations);
            *vertex = (x, v);
        }
    }
    best_of(simplex, evaluations, converged)
}

fn best_of(
    simplex: Vec<(Vec<f64>, f64)>,
    evaluations: usize,
    converged: bool,
) -> NelderMeadOutcome {
    let (x, value) = simplex
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("simplex has at least one vertex");
    NelderMeadOutcome {
        x,
        value,
        evaluations,
        converged,
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let rosen = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            initial_step: 0.5,
            max_evaluations: 5000,
            ..Default::default()
        };
        let out = minimize(rosen, &[-1.2, 1.0], &opts);
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-4 && (out.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn respects_budget() {
        let mut calls = 0;
        let opts = NelderMeadOptions {
            max_evaluations: 17,
            ..Default::default()
        };
        let out = minimize(
            |x: &[f64]| {
                calls += 1;
                x.iter().map(|v| v * v).sum()
            },
            &[3.0, -2.0, 1.0],
            &opts,
        );
        assert!(out.evaluations <= 17);
        assert_eq!(calls, out.evaluations);
    }

    #[test]
    fn one_dimensional_abs() {
        let out = minimize(
            |x: &[f64]| (x[0] - 0.3).abs(),
            &[0.0],
            &NelderMeadOptions::default(),
        );
        assert!((out.x[0] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let out = minimize(
            |x: &[f64]| {
                if x[0] > 0.5 {
                    f64::NAN
                } else {
                    (x[0] - 0.4).powi(2)
                }
            },
            &[0.0],
            &NelderMeadOptions::default(),
        );
        assert!((out.x[0] - 0.4).abs() < 1e-5);
    }
}
