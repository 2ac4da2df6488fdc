//! Cross-text analysis on the `λ₀`–`λ₁` plane.
//!
//! Each fitted text becomes a dot `(λ₀, λ₁)`. Two empirical laws relate the
//! coordinates: a straight line (observed across languages for letters) and
//! a power law with shifted origin (observed across German genres),
//!
//! ```text
//! λ₁ = a + b·λ₀
//! λ₁ = λ₁min + c / (λ₀ - 1)^p
//! ```
//!
//! The completion coefficient `α = (λ₀ - λ₁) / (λ₀ - λ₁min)` places a text
//! between a fully optimized code (`λ₁ = λ₁min`, `α = 1`) and no
//! optimization at all (`λ₁ = λ₀`, `α = 0`).

mod records;
mod report;
mod svg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optimize::{nelder_mead, SimplexOptions};
use crate::stats::{mean, ols, residual_sum_of_squares, std_dev};

pub use records::{parse_records, write_records, TextRecord, RECORD_HEADER};
pub use report::{summarize, write_fit_rows, AlphaPoint, CurveSample, Dot, Report, ReportOptions};

/// Provisional floor of `λ₁`.
pub const LAMBDA1_MIN: f64 = 0.5;

/// `λ₀` cannot fall below one syllable's worth; the power law's pole.
pub const X_SHIFT: f64 = 1.0;

/// Published cross-language letters trend `λ₁ = 0.18 + 0.45·λ₀`.
pub const REFERENCE_LINEAR: Curve = Curve::Linear {
    intercept: 0.18,
    slope: 0.45,
};

/// Published German genre trend `λ₁ = 0.5 + 0.34 / (λ₀ - 1)^1.01`.
pub const REFERENCE_SHIFTED_POWER: Curve = Curve::ShiftedPower {
    c: 0.34,
    p: 1.01,
    lambda1_min: LAMBDA1_MIN,
    x_shift: X_SHIFT,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenreError {
    #[error("completion coefficient needs lambda0 > lambda1_min, got lambda0={lambda0}, lambda1_min={lambda1_min}")]
    LambdaBelowMinimum { lambda0: f64, lambda1_min: f64 },
    #[error("non-finite input {0}")]
    NonFinite(f64),
    #[error("need at least {required} points, found {found}")]
    TooFewPoints { found: usize, required: usize },
    #[error("all lambda0 values coincide; regression is undetermined")]
    DegenerateAbscissae,
    #[error("point {index} (lambda0={lambda0}, lambda1={lambda1}) violates lambda0 > {x_shift} and lambda1 > {lambda1_min}")]
    ShiftViolation {
        index: usize,
        lambda0: f64,
        lambda1: f64,
        x_shift: f64,
        lambda1_min: f64,
    },
    #[error("power law is undefined at lambda0={lambda0} <= {x_shift}")]
    OutsideDomain { lambda0: f64, x_shift: f64 },
    #[error("no records given")]
    NoRecords,
    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
}

/// Completion coefficient of one text.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Completion {
    pub alpha: f64,
    /// `0 ≤ α ≤ 1`. Values outside are kept, not clamped: they flag texts
    /// whose `λ₁` is excessive for their `λ₀`.
    pub in_range: bool,
}

pub fn completion_coefficient(
    lambda0: f64,
    lambda1: f64,
    lambda1_min: f64,
) -> Result<Completion, GenreError> {
    for v in [lambda0, lambda1, lambda1_min] {
        if !v.is_finite() {
            return Err(GenreError::NonFinite(v));
        }
    }
    if lambda0 <= lambda1_min {
        return Err(GenreError::LambdaBelowMinimum {
            lambda0,
            lambda1_min,
        });
    }
    let alpha = (lambda0 - lambda1) / (lambda0 - lambda1_min);
    Ok(Completion {
        alpha,
        in_range: (0.0..=1.0).contains(&alpha),
    })
}

/// `λ₁` implied by a completion coefficient: `α·λ₁min + (1 - α)·λ₀`.
pub fn lambda1_from_completion(lambda0: f64, alpha: f64, lambda1_min: f64) -> f64 {
    alpha * lambda1_min + (1.0 - alpha) * lambda0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegressionForm {
    Linear,
    ShiftedPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum Curve {
    Linear {
        intercept: f64,
        slope: f64,
    },
    ShiftedPower {
        c: f64,
        p: f64,
        lambda1_min: f64,
        x_shift: f64,
    },
}

impl Curve {
    pub fn form(&self) -> RegressionForm {
        match self {
            Curve::Linear { .. } => RegressionForm::Linear,
            Curve::ShiftedPower { .. } => RegressionForm::ShiftedPower,
        }
    }

    pub fn evaluate(&self, lambda0: f64) -> Result<f64, GenreError> {
        match *self {
            Curve::Linear { intercept, slope } => Ok(intercept + slope * lambda0),
            Curve::ShiftedPower {
                c,
                p,
                lambda1_min,
                x_shift,
            } => {
                if !matches!(
                    lambda0.partial_cmp(&x_shift),
                    Some(std::cmp::Ordering::Greater)
                ) {
                    return Err(GenreError::OutsideDomain { lambda0, x_shift });
                }
                Ok(lambda1_min + c / (lambda0 - x_shift).powf(p))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub curve: Curve,
    /// `1 - SS_res / SS_tot` on the `λ₁` scale; zero when `λ₁` is constant.
    pub r_squared: f64,
    pub ss_res: f64,
    pub points: usize,
}

/// Evaluates a fitted curve at `λ₀`.
pub fn predict(fit: &RegressionFit, lambda0: f64) -> Result<f64, GenreError> {
    fit.curve.evaluate(lambda0)
}

fn split(points: &[(f64, f64)]) -> Result<(Vec<f64>, Vec<f64>), GenreError> {
    for &(x, y) in points {
        for v in [x, y] {
            if !v.is_finite() {
                return Err(GenreError::NonFinite(v));
            }
        }
    }
    Ok(points.iter().copied().unzip())
}

fn r_squared(ys: &[f64], ss_res: f64) -> f64 {
    let m = mean(ys).unwrap_or(0.0);
    let ss_tot: f64 = ys.iter().map(|y| (y - m).powi(2)).sum();
    if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        0.0
    }
}

/// Least-squares line `λ₁ = a + b·λ₀`.
pub fn fit_linear(points: &[(f64, f64)]) -> Result<RegressionFit, GenreError> {
    if points.len() < 3 {
        return Err(GenreError::TooFewPoints {
            found: points.len(),
            required: 3,
        });
    }
    let (xs, ys) = split(points)?;
    let line = ols(&xs, &ys).ok_or(GenreError::DegenerateAbscissae)?;
    Ok(RegressionFit {
        curve: Curve::Linear {
            intercept: line.intercept,
            slope: line.slope,
        },
        r_squared: r_squared(&ys, line.ss_res),
        ss_res: line.ss_res,
        points: points.len(),
    })
}

/// Fits `λ₁ = λ₁min + c / (λ₀ - x_shift)^p`.
///
/// Starts from the straight-line fit of `ln(λ₁ - λ₁min)` on
/// `ln(λ₀ - x_shift)`, then refines `(c, p)` by simplex search on the
/// residual sum of squares in `λ₁` itself. The refinement is only kept
/// when it lowers that sum.
pub fn fit_shifted_power(
    points: &[(f64, f64)],
    lambda1_min: f64,
    x_shift: f64,
) -> Result<RegressionFit, GenreError> {
    if points.len() < 3 {
        return Err(GenreError::TooFewPoints {
            found: points.len(),
            required: 3,
        });
    }
    for v in [lambda1_min, x_shift] {
        if !v.is_finite() {
            return Err(GenreError::NonFinite(v));
        }
    }
    let (xs, ys) = split(points)?;
    for (index, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
        if !(x > x_shift && y > lambda1_min) {
            return Err(GenreError::ShiftViolation {
                index,
                lambda0: x,
                lambda1: y,
                x_shift,
                lambda1_min,
            });
        }
    }
    let us: Vec<f64> = xs.iter().map(|x| (x - x_shift).ln()).collect();
    let vs: Vec<f64> = ys.iter().map(|y| (y - lambda1_min).ln()).collect();
    let line = ols(&us, &vs).ok_or(GenreError::DegenerateAbscissae)?;

    let sse = |c: f64, p: f64| {
        residual_sum_of_squares(&xs, &ys, |x| lambda1_min + c / (x - x_shift).powf(p))
    };
    let start = [line.intercept.exp(), -line.slope];
    let start_sse = sse(start[0], start[1]);
    let opts = SimplexOptions {
        initial_step: 0.01,
        xtol: 1e-10,
        max_iterations: 5000,
    };
    let refined = nelder_mead(|v| sse(v[0], v[1]), &start, &opts);
    let (c, p, ss_res) = if refined.value < start_sse {
        (refined.x[0], refined.x[1], refined.value)
    } else {
        (start[0], start[1], start_sse)
    };
    Ok(RegressionFit {
        curve: Curve::ShiftedPower {
            c,
            p,
            lambda1_min,
            x_shift,
        },
        r_squared: r_squared(&ys, ss_res),
        ss_res,
        points: points.len(),
    })
}

pub fn fit_regression(
    points: &[(f64, f64)],
    form: RegressionForm,
    lambda1_min: f64,
    x_shift: f64,
) -> Result<RegressionFit, GenreError> {
    match form {
        RegressionForm::Linear => fit_linear(points),
        RegressionForm::ShiftedPower => fit_shifted_power(points, lambda1_min, x_shift),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSummary {
    pub per_record: Vec<Completion>,
    pub mean: f64,
    /// Sample standard deviation (`n - 1`); absent for a single record.
    pub std_dev: Option<f64>,
    /// Population standard deviation (`n`).
    pub std_dev_population: f64,
    /// How many records fall outside `0 ≤ α ≤ 1`.
    pub out_of_range: usize,
}

pub fn alpha_summary(records: &[TextRecord], lambda1_min: f64) -> Result<AlphaSummary, GenreError> {
    if records.is_empty() {
        return Err(GenreError::NoRecords);
    }
    let per_record = records
        .iter()
        .map(|r| completion_coefficient(r.lambda0, r.lambda1, lambda1_min))
        .collect::<Result<Vec<_>, _>>()?;
    let alphas: Vec<f64> = per_record.iter().map(|c| c.alpha).collect();
    Ok(AlphaSummary {
        mean: mean(&alphas).expect("non-empty"),
        std_dev: std_dev(&alphas, 1),
        std_dev_population: std_dev(&alphas, 0).expect("non-empty"),
        out_of_range: per_record.iter().filter(|c| !c.in_range).count(),
        per_record,
    })
}
