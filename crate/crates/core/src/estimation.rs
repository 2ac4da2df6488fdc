//! Minimum-χ² estimation of the mixture parameters from a length histogram.
//!
//! Expected counts are normalized to the sample size (`E_x = N·f(x)`, with
//! the pooled tail taking `N` times the remaining mass), cells are pooled
//! until each expects at least [`MIN_EXPECTED`] words, and the fit quality is
//! judged by the discrepancy coefficient `C = χ² / N`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{mix_pmf_table, MixtureParams, ModelError};
use crate::optimize::{nelder_mead, SimplexOptions};

/// Classical χ² cell rule.
pub const MIN_EXPECTED: f64 = 5.0;

/// Upper bound on both rates during fitting.
pub const LAMBDA_MAX: f64 = 10.0;

/// Fitted intervals narrower than this are reported as plain Čebanov-Fucks fits.
pub const FIT_DEGENERACY_TOL: f64 = 0.01;

/// A fit is satisfactory when `C <= 0.02` (inclusive).
pub const SATISFACTORY_DISCREPANCY: f64 = 0.02;

/// Smallest χ² reduction for which a free interval is preferred over the
/// one-parameter law: the 95% point of χ² with one degree of freedom.
pub const NESTED_CHI_SQUARE_GAIN: f64 = 3.841;

/// Below this many words the χ² approximation is poor; fitting still runs.
pub const SMALL_SAMPLE_WARNING: u64 = 30;

/// Tail tolerance of the pmf table used for binning.
const BINNING_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("word length must be at least 1, got {0}")]
    InvalidLength(u32),
    #[error("length {0} appears more than once")]
    DuplicateLength(u32),
    #[error("histogram total exceeds the supported count range")]
    CountOverflow,
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("need at least {required} distinct observed lengths, found {found}")]
    TooFewLengths { found: usize, required: usize },
    #[error("binning produced {bins} bin(s); at least 3 are needed to fit the model")]
    TooFewBins { bins: usize },
    #[error("bin {index} has non-positive expected count {expected}")]
    NonPositiveExpected { index: usize, expected: f64 },
    #[error("no parameter value in the search region yields a valid binning")]
    NoFeasibleBinning,
    #[error("optimizer budget exhausted after {iterations} iterations (last lambda1={lambda1}, lambda2={lambda2})")]
    NotConverged {
        iterations: usize,
        lambda1: f64,
        lambda2: f64,
    },
    #[error("invalid fit option: {0}")]
    InvalidOption(String),
}

/// Observed word counts by length in syllables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthHistogram {
    counts: BTreeMap<u32, u64>,
    total: u64,
}

impl LengthHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a histogram from `(length, count)` pairs; lengths must be
    /// distinct and positive.
    pub fn from_counts<I>(pairs: I) -> Result<Self, EstimationError>
    where
        I: IntoIterator<Item = (u32, u64)>,
    {
        let mut h = Self::new();
        for (x, c) in pairs {
            if h.counts.contains_key(&x) {
                return Err(EstimationError::DuplicateLength(x));
            }
            h.add(x, c)?;
        }
        Ok(h)
    }

    /// Tallies one word per listed length.
    pub fn from_lengths<I>(lengths: I) -> Result<Self, EstimationError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut h = Self::new();
        for x in lengths {
            h.add(x, 1)?;
        }
        Ok(h)
    }

    /// Adds `count` words of length `x`. Zero counts are recorded but do
    /// not make the length "observed".
    pub fn add(&mut self, x: u32, count: u64) -> Result<(), EstimationError> {
        if x == 0 {
            return Err(EstimationError::InvalidLength(x));
        }
        let total = self
            .total
            .checked_add(count)
            .ok_or(EstimationError::CountOverflow)?;
        *self.counts.entry(x).or_insert(0) += count;
        self.total = total;
        Ok(())
    }

    pub fn merge(&mut self, other: &LengthHistogram) -> Result<(), EstimationError> {
        for (x, c) in other.iter() {
            self.add(x, c)?;
        }
        Ok(())
    }

    /// Sample size `N`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Whether a row for `x` exists, even with a zero count.
    pub fn contains(&self, x: u32) -> bool {
        self.counts.contains_key(&x)
    }

    pub fn count(&self, x: u32) -> u64 {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    /// All recorded `(length, count)` pairs in ascending length, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&x, &c)| (x, c))
    }

    /// Number of lengths with a positive count.
    pub fn distinct_observed(&self) -> usize {
        self.counts.values().filter(|&&c| c > 0).count()
    }

    pub fn max_observed(&self) -> Option<u32> {
        self.counts
            .iter()
            .rev()
            .find(|(_, &c)| c > 0)
            .map(|(&x, _)| x)
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Mean length `Σ x·n_x / N`.
    pub fn mean(&self) -> Option<f64> {
        (self.total > 0).then(|| {
            self.counts
                .iter()
                .map(|(&x, &c)| f64::from(x) * c as f64)
                .sum::<f64>()
                / self.total as f64
        })
    }
}

/// One χ² cell: lengths `first..=last`, or `first..` when `last` is `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    pub first: u32,
    pub last: Option<u32>,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedData {
    pub bins: Vec<Bin>,
    /// The final, open-ended bin merges more than one tabulated length.
    pub pooled_tail: bool,
}

impl BinnedData {
    pub fn observed_total(&self) -> u64 {
        self.bins.iter().map(|b| b.observed).sum()
    }

    pub fn expected_total(&self) -> f64 {
        self.bins.iter().map(|b| b.expected).sum()
    }
}

/// Pools the histogram into χ² cells for the given parameters.
///
/// Cells are accumulated from length 1 upward and closed once they expect at
/// least `min_expected` words, provided the mass still to come does too;
/// otherwise everything left joins the final open-ended bin.
pub fn bin_histogram(
    hist: &LengthHistogram,
    params: &MixtureParams,
    min_expected: f64,
) -> Result<BinnedData, EstimationError> {
    if hist.is_empty() {
        return Err(EstimationError::EmptyHistogram);
    }
    let n = hist.total() as f64;
    let table = mix_pmf_table(params, BINNING_TAIL_TOL)?;
    let probs = table.probabilities();

    // suffix[i] = expected count for lengths > i (1-based i), tail included.
    let mut suffix = vec![0.0; probs.len() + 1];
    suffix[probs.len()] = n * table.truncation_tail();
    for i in (0..probs.len()).rev() {
        suffix[i] = suffix[i + 1] + n * probs[i];
    }

    let mut bins = Vec::new();
    let mut first = 1u32;
    let mut observed = 0u64;
    let mut expected = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        let x = i as u32 + 1;
        observed += hist.count(x);
        expected += n * p;
        if expected >= min_expected && suffix[i + 1] >= min_expected {
            bins.push(Bin {
                first,
                last: Some(x),
                observed,
                expected,
            });
            first = x + 1;
            observed = 0;
            expected = 0.0;
        }
    }
    let table_max = table.max_length();
    observed += hist
        .iter()
        .filter(|&(x, _)| x > table_max)
        .map(|(_, c)| c)
        .sum::<u64>();
    expected += n * table.truncation_tail();
    bins.push(Bin {
        first,
        last: None,
        observed,
        expected,
    });

    if bins.len() < 3 {
        return Err(EstimationError::TooFewBins { bins: bins.len() });
    }
    Ok(BinnedData {
        bins,
        pooled_tail: first < table_max,
    })
}

/// Pearson's `Σ (O - E)² / E` over all bins.
pub fn chi_square(data: &BinnedData) -> Result<f64, EstimationError> {
    let mut sum = 0.0;
    for (index, b) in data.bins.iter().enumerate() {
        if !(b.expected > 0.0 && b.expected.is_finite()) {
            return Err(EstimationError::NonPositiveExpected {
                index,
                expected: b.expected,
            });
        }
        let d = b.observed as f64 - b.expected;
        sum += d * d / b.expected;
    }
    Ok(sum)
}

/// Discrepancy coefficient `C = χ² / N`.
pub fn discrepancy(chi_square: f64, n: u64) -> f64 {
    chi_square / n as f64
}

pub fn is_satisfactory(c: f64) -> bool {
    c <= SATISFACTORY_DISCREPANCY
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Uniform mixture with free `λ₁ ≤ λ₂`.
    Mixed,
    /// Plain law, `λ₁ = λ₂`.
    CebanovFucks,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub min_expected: f64,
    pub lambda_max: f64,
    pub degeneracy_tol: f64,
    /// A mixture fit must beat the plain fit's χ² by at least this much to be
    /// reported as non-degenerate. Zero disables the comparison.
    pub nested_gain: f64,
    /// Spacing of the coarse grid over `λ₀` and the half-width `δ`.
    pub grid_step: f64,
    pub grid_lambda0_max: f64,
    pub grid_half_width_max: f64,
    pub simplex: SimplexOptions,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            min_expected: MIN_EXPECTED,
            lambda_max: LAMBDA_MAX,
            degeneracy_tol: FIT_DEGENERACY_TOL,
            nested_gain: NESTED_CHI_SQUARE_GAIN,
            grid_step: 0.05,
            grid_lambda0_max: 5.0,
            grid_half_width_max: 2.5,
            simplex: SimplexOptions {
                initial_step: 0.05,
                xtol: 1e-6,
                max_iterations: 500,
            },
        }
    }
}

impl FitOptions {
    pub fn validate(&self) -> Result<(), EstimationError> {
        let positive = |v: f64, name: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(EstimationError::InvalidOption(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive(self.min_expected, "min_expected")?;
        positive(self.lambda_max, "lambda_max")?;
        positive(self.grid_step, "grid_step")?;
        positive(self.grid_lambda0_max, "grid_lambda0_max")?;
        positive(self.simplex.initial_step, "simplex initial step")?;
        positive(self.simplex.xtol, "simplex tolerance")?;
        if !(self.degeneracy_tol >= 0.0 && self.degeneracy_tol.is_finite()) {
            return Err(EstimationError::InvalidOption(format!(
                "degeneracy_tol must be non-negative, got {}",
                self.degeneracy_tol
            )));
        }
        if !(self.nested_gain >= 0.0 && self.nested_gain.is_finite()) {
            return Err(EstimationError::InvalidOption(format!(
                "nested_gain must be non-negative, got {}",
                self.nested_gain
            )));
        }
        if !(self.grid_half_width_max >= 0.0 && self.grid_half_width_max.is_finite()) {
            return Err(EstimationError::InvalidOption(format!(
                "grid_half_width_max must be non-negative, got {}",
                self.grid_half_width_max
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: ModelKind,
    pub params: MixtureParams,
    pub lambda0: f64,
    /// `1 + λ₀`, the expected number of syllables per word.
    pub mean_length: f64,
    pub chi_square: f64,
    /// Discrepancy coefficient `C = χ² / N`.
    pub c: f64,
    /// `bins - 1 - free parameters`; informational only.
    pub dof: i64,
    pub n: u64,
    pub bins: usize,
    pub degenerate: bool,
    pub satisfactory: bool,
    pub iterations: usize,
}

impl FitResult {
    #[allow(clippy::too_many_arguments)]
    fn new(
        model: ModelKind,
        params: MixtureParams,
        chi_square: f64,
        n: u64,
        bins: usize,
        free_params: i64,
        degenerate: bool,
        iterations: usize,
    ) -> Self {
        let c = discrepancy(chi_square, n);
        Self {
            model,
            params,
            lambda0: params.lambda0(),
            mean_length: crate::model::mean_length(&params),
            chi_square,
            c,
            dof: bins as i64 - 1 - free_params,
            n,
            bins,
            degenerate,
            satisfactory: is_satisfactory(c),
            iterations,
        }
    }
}

/// χ² of `hist` against `params` after rebinning, or `+inf` when the
/// binning is infeasible.
fn objective(hist: &LengthHistogram, params: &MixtureParams, min_expected: f64) -> f64 {
    bin_histogram(hist, params, min_expected)
        .and_then(|b| chi_square(&b))
        .unwrap_or(f64::INFINITY)
}

fn check_sample(hist: &LengthHistogram, required: usize) -> Result<(), EstimationError> {
    if hist.is_empty() {
        return Err(EstimationError::EmptyHistogram);
    }
    let found = hist.distinct_observed();
    if found < required {
        return Err(EstimationError::TooFewLengths { found, required });
    }
    if hist.total() < SMALL_SAMPLE_WARNING {
        log::warn!(
            "fitting a histogram of only {} words; the chi-square approximation is unreliable below {}",
            hist.total(),
            SMALL_SAMPLE_WARNING
        );
    }
    Ok(())
}

/// Maps an unconstrained `(λ₀, δ)` onto the feasible region
/// `0 ≤ λ₀ - δ ≤ λ₀ + δ ≤ Λ_MAX`.
fn project(lambda0: f64, half_width: f64, lambda_max: f64) -> (f64, f64) {
    let l0 = lambda0.clamp(0.0, lambda_max);
    let d = half_width.max(0.0).min(l0).min(lambda_max - l0);
    (l0, d)
}

fn grid_points(step: f64, max: f64) -> impl Iterator<Item = f64> {
    let count = (max / step + 1e-9).floor() as usize;
    (0..=count).map(move |i| i as f64 * step)
}

/// Fits the uniform mixture by minimizing χ² over `0 ≤ λ₁ ≤ λ₂ ≤ Λ_MAX`.
///
/// Works in `(λ₀, δ)` with `δ = (λ₂ - λ₁)/2`: a coarse grid picks the start
/// (ties go to the smaller `δ`), then a simplex refines it. Fits whose
/// interval is narrower than `degeneracy_tol`, or whose χ² improves on the
/// plain Čebanov-Fucks fit by less than `nested_gain`, are returned as that
/// plain fit.
pub fn fit_mixture(
    hist: &LengthHistogram,
    opts: &FitOptions,
) -> Result<FitResult, EstimationError> {
    opts.validate()?;
    check_sample(hist, 3)?;
    let lmax = opts.lambda_max;
    let eval = |l0: f64, d: f64| -> f64 {
        let (l0, d) = project(l0, d, lmax);
        match MixtureParams::from_midpoint(l0, d) {
            Ok(p) => objective(hist, &p, opts.min_expected),
            Err(_) => f64::INFINITY,
        }
    };

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for l0 in grid_points(opts.grid_step, opts.grid_lambda0_max.min(lmax)).skip(1) {
        for d in grid_points(opts.grid_step, opts.grid_half_width_max) {
            if d > l0 + 1e-12 || l0 + d > lmax + 1e-12 {
                break;
            }
            let f = eval(l0, d);
            if f < best.0 || (f == best.0 && f.is_finite() && d < best.2) {
                best = (f, l0, d);
            }
        }
    }
    if !best.0.is_finite() {
        return Err(EstimationError::NoFeasibleBinning);
    }

    let out = nelder_mead(|v| eval(v[0], v[1]), &[best.1, best.2], &opts.simplex);
    let (l0, d) = project(out.x[0], out.x[1], lmax);
    let params = MixtureParams::from_midpoint(l0, d)?;
    if !out.converged {
        return Err(EstimationError::NotConverged {
            iterations: out.iterations,
            lambda1: params.lambda1(),
            lambda2: params.lambda2(),
        });
    }

    if params.width() <= opts.degeneracy_tol {
        return fit_cebanov_fucks(hist, opts);
    }
    let binned = bin_histogram(hist, &params, opts.min_expected)?;
    let chi = chi_square(&binned)?;
    if opts.nested_gain > 0.0 {
        let plain = fit_cebanov_fucks(hist, opts)?;
        if plain.chi_square - chi < opts.nested_gain {
            return Ok(plain);
        }
    }
    Ok(FitResult::new(
        ModelKind::Mixed,
        params,
        chi,
        hist.total(),
        binned.bins.len(),
        2,
        false,
        out.iterations,
    ))
}

/// Fits the plain law (`λ₁ = λ₂ = λ`) by one-dimensional χ² minimization.
///
/// A histogram in which every word is monosyllabic is fitted exactly by
/// `λ = 0`; that boundary case is returned directly with `χ² = 0` and a
/// single bin, since no binning with three cells exists for it.
pub fn fit_cebanov_fucks(
    hist: &LengthHistogram,
    opts: &FitOptions,
) -> Result<FitResult, EstimationError> {
    opts.validate()?;
    if !hist.is_empty() && hist.max_observed() == Some(1) {
        let params = MixtureParams::point(0.0)?;
        return Ok(FitResult::new(
            ModelKind::CebanovFucks,
            params,
            0.0,
            hist.total(),
            1,
            0,
            true,
            0,
        ));
    }
    check_sample(hist, 2)?;
    let lmax = opts.lambda_max;
    let eval = |lambda: f64| -> f64 {
        match MixtureParams::point(lambda.clamp(0.0, lmax)) {
            Ok(p) => objective(hist, &p, opts.min_expected),
            Err(_) => f64::INFINITY,
        }
    };

    let mut best = (f64::INFINITY, 0.0);
    for lambda in grid_points(opts.grid_step, opts.grid_lambda0_max.min(lmax)).skip(1) {
        let f = eval(lambda);
        if f < best.0 {
            best = (f, lambda);
        }
    }
    if !best.0.is_finite() {
        return Err(EstimationError::NoFeasibleBinning);
    }
    let out = nelder_mead(|v| eval(v[0]), &[best.1], &opts.simplex);
    let lambda = out.x[0].clamp(0.0, lmax);
    let params = MixtureParams::point(lambda)?;
    if !out.converged {
        return Err(EstimationError::NotConverged {
            iterations: out.iterations,
            lambda1: lambda,
            lambda2: lambda,
        });
    }
    let binned = bin_histogram(hist, &params, opts.min_expected)?;
    let chi = chi_square(&binned)?;
    Ok(FitResult::new(
        ModelKind::CebanovFucks,
        params,
        chi,
        hist.total(),
        binned.bins.len(),
        1,
        true,
        out.iterations,
    ))
}

pub fn fit(
    hist: &LengthHistogram,
    model: ModelKind,
    opts: &FitOptions,
) -> Result<FitResult, EstimationError> {
    match model {
        ModelKind::Mixed => fit_mixture(hist, opts),
        ModelKind::CebanovFucks => fit_cebanov_fucks(hist, opts),
    }
}
