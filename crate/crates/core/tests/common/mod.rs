//! Reference implementations that share no code with the library.

#![allow(dead_code)]

/// `ln((x-1)!)` by direct summation; fine for the small `x` used in tests.
fn ln_fact(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Shifted Poisson term written out from the closed form.
pub fn cf_direct(x: u32, lambda: f64) -> f64 {
    let k = x - 1;
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (-lambda + k as f64 * lambda.ln() - ln_fact(k)).exp()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adapt(f, a, b, fa, fm, fb, whole, eps, 48)
}

/// Mixture pmf as the averaged integral of the plain law over `[l1, l2]`.
pub fn mix_oracle(x: u32, l1: f64, l2: f64) -> f64 {
    if l2 - l1 < 1e-9 {
        return cf_direct(x, 0.5 * (l1 + l2));
    }
    let g = move |l: f64| cf_direct(x, l);
    // Split at the integrand's mode so both halves are monotone.
    let mode = ((x - 1) as f64).clamp(l1, l2);
    let eps = 1e-14 * (l2 - l1).max(1.0);
    (integrate(&g, l1, mode, eps) + integrate(&g, mode, l2, eps)) / (l2 - l1)
}

/// Expected counts rounded to integers: a histogram without sampling noise.
pub fn rounded_counts(pmf: impl Fn(u32) -> f64, n: f64) -> Vec<(u32, u64)> {
    (1..200)
        .map(|x| (x, (n * pmf(x)).round() as u64))
        .filter(|&(_, c)| c > 0)
        .collect()
}
