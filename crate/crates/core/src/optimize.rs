//! Derivative-free simplex minimization (Nelder-Mead).

/// Stopping rule and starting-simplex size for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Converged once every vertex lies within this distance of the best one.
    pub xtol: f64,
    pub max_iterations: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            xtol: 1e-6,
            max_iterations: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct Vertex {
    x: Vec<f64>,
    f: f64,
}

/// Minimizes `f` starting from `x0`.
///
/// Non-finite objective values are treated as `+inf`, so callers can mark
/// infeasible points that way. The returned point is never worse than `x0`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &SimplexOptions) -> SimplexOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n >= 1, "nelder_mead needs at least one parameter");
    let mut eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vertex> = Vec::with_capacity(n + 1);
    simplex.push(Vertex {
        x: x0.to_vec(),
        f: eval(x0),
    });
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let fx = eval(&x);
        simplex.push(Vertex { x, f: fx });
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        // Stable sort keeps earlier vertices first on ties, which keeps runs reproducible.
        simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
        let spread = simplex[1..]
            .iter()
            .map(|v| distance(&v.x, &simplex[0].x))
            .fold(0.0, f64::max);
        if spread < opts.xtol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        let worst = n;
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..worst].iter().map(|v| v.x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst].x)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = eval(&xr);
        if fr < simplex[0].f {
            let xe = along(2.0);
            let fe = eval(&xe);
            simplex[worst] = if fe < fr {
                Vertex { x: xe, f: fe }
            } else {
                Vertex { x: xr, f: fr }
            };
            continue;
        }
        if fr < simplex[n - 1].f {
            simplex[worst] = Vertex { x: xr, f: fr };
            continue;
        }
        let (xc, fc) = if fr < simplex[worst].f {
            let xc = along(0.5);
            let fc = eval(&xc);
            (xc, fc)
        } else {
            let xc = along(-0.5);
            let fc = eval(&xc);
            (xc, fc)
        };
        if fc < simplex[worst].f.min(fr) {
            simplex[worst] = Vertex { x: xc, f: fc };
            continue;
        }
        let best = simplex[0].x.clone();
        for v in simplex.iter_mut().skip(1) {
            for (xi, bi) in v.x.iter_mut().zip(&best) {
                *xi = bi + 0.5 * (*xi - bi);
            }
            v.f = eval(&v.x);
        }
    }

    let best = simplex.swap_remove(0);
    SimplexOutcome {
        x: best.x,
        value: best.f,
        iterations,
        converged,
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
