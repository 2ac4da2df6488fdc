//! Small descriptive-statistics helpers shared by the corpus and genre modules.

/// Ordinary least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub intercept: f64,
    pub slope: f64,
    pub ss_res: f64,
    pub ss_tot: f64,
}

impl LineFit {
    /// `1 - SS_res / SS_tot`; `None` when the response is constant.
    pub fn r_squared(&self) -> Option<f64> {
        (self.ss_tot > 0.0).then(|| 1.0 - self.ss_res / self.ss_tot)
    }
}

/// Least-squares line through `(x, y)` pairs. Returns `None` when fewer than
/// two points are given or all abscissae coincide.
pub fn ols(xs: &[f64], ys: &[f64]) -> Option<LineFit> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let mx = mean(xs)?;
    let my = mean(ys)?;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx <= 0.0 || sxx <= f64::EPSILON * xs.iter().map(|x| x * x).sum::<f64>() {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res = residual_sum_of_squares(xs, ys, |x| intercept + slope * x);
    Some(LineFit {
        intercept,
        slope,
        ss_res,
        ss_tot,
    })
}

pub fn residual_sum_of_squares(xs: &[f64], ys: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    xs.iter().zip(ys).map(|(&x, &y)| (y - f(x)).powi(2)).sum()
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        None
    } else {
        Some(xs.iter().sum::<f64>() / xs.len() as f64)
    }
}

/// Standard deviation with denominator `n - ddof`; `None` if `n <= ddof`.
pub fn std_dev(xs: &[f64], ddof: usize) -> Option<f64> {
    if xs.len() <= ddof {
        return None;
    }
    let m = mean(xs)?;
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    Some((ss / (xs.len() - ddof) as f64).sqrt())
}
