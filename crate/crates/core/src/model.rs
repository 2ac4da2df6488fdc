//! The Čebanov-Fucks word-length law and its uniform mixture.
//!
//! A word of `x` syllables has one obligatory syllable plus `x - 1`
//! Poisson-distributed further syllables:
//!
//! ```text
//! P(X = x) = e^(-λ) λ^(x-1) / (x-1)!,   x = 1, 2, ...
//! ```
//!
//! The mixture draws `λ` uniformly from `[λ₁, λ₂]`, so its pmf is the
//! interval average of the plain law. Integrating the Poisson term gives a
//! difference of cumulative Poisson sums:
//!
//! ```text
//! f(x) = [F_{x-1}(λ₁) - F_{x-1}(λ₂)] / (λ₂ - λ₁),   F_k(t) = Σ_{j≤k} e^(-t) t^j / j!
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::special::{poisson_cdf_below, poisson_sf_from, poisson_term};

/// Interval widths below this are treated as a plain Čebanov-Fucks law.
pub const DEGENERACY_EPS: f64 = 1e-9;

/// Below this width the cumulative-sum difference loses too many digits, so
/// the interval average is expanded around the midpoint instead.
pub const CANCELLATION_WIDTH: f64 = 1e-6;

/// Hard cap on the explicit support of a [`LengthPmf`].
pub const MAX_TABLE_LENGTH: u32 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("word length must be at least 1 syllable, got {0}")]
    InvalidLength(u32),
    #[error("Poisson rate must be finite and non-negative, got {0}")]
    InvalidRate(f64),
    #[error("need 0 <= lambda1 <= lambda2 (finite), got lambda1={lambda1}, lambda2={lambda2}")]
    InvalidInterval { lambda1: f64, lambda2: f64 },
    #[error("tail tolerance must lie in (0, 1), got {0}")]
    InvalidTailTolerance(f64),
    #[error("support exceeds {MAX_TABLE_LENGTH} lengths before the tail fell below {0}")]
    SupportTooLong(f64),
}

/// Endpoints `(λ₁, λ₂)` of the uniform distribution of the Poisson rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct MixtureParams {
    lambda1: f64,
    lambda2: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    lambda1: f64,
    lambda2: f64,
}

impl TryFrom<RawParams> for MixtureParams {
    type Error = ModelError;
    fn try_from(raw: RawParams) -> Result<Self, ModelError> {
        MixtureParams::new(raw.lambda1, raw.lambda2)
    }
}

impl From<MixtureParams> for RawParams {
    fn from(p: MixtureParams) -> Self {
        RawParams {
            lambda1: p.lambda1,
            lambda2: p.lambda2,
        }
    }
}

impl MixtureParams {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self, ModelError> {
        if !(lambda1.is_finite() && lambda2.is_finite() && 0.0 <= lambda1 && lambda1 <= lambda2) {
            return Err(ModelError::InvalidInterval { lambda1, lambda2 });
        }
        Ok(Self { lambda1, lambda2 })
    }

    /// The plain Čebanov-Fucks law, `λ₁ = λ₂ = lambda`.
    pub fn point(lambda: f64) -> Result<Self, ModelError> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(ModelError::InvalidRate(lambda));
        }
        Ok(Self {
            lambda1: lambda,
            lambda2: lambda,
        })
    }

    /// Builds `(λ₀ - δ, λ₀ + δ)` from midpoint and half-width.
    pub fn from_midpoint(lambda0: f64, half_width: f64) -> Result<Self, ModelError> {
        Self::new(lambda0 - half_width, lambda0 + half_width)
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    /// Midpoint `(λ₁ + λ₂) / 2`: the mean number of syllables beyond the first.
    pub fn lambda0(&self) -> f64 {
        0.5 * (self.lambda1 + self.lambda2)
    }

    pub fn width(&self) -> f64 {
        self.lambda2 - self.lambda1
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() < DEGENERACY_EPS
    }
}

fn check_length(x: u32) -> Result<(), ModelError> {
    if x == 0 {
        Err(ModelError::InvalidLength(x))
    } else {
        Ok(())
    }
}

/// Probability that a word has `x` syllables under the plain Čebanov-Fucks law.
pub fn cf_pmf(x: u32, lambda: f64) -> Result<f64, ModelError> {
    check_length(x)?;
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(ModelError::InvalidRate(lambda));
    }
    Ok(poisson_term(u64::from(x - 1), lambda))
}

/// Probability that a word has `x` syllables under the uniform mixture.
pub fn mix_pmf(x: u32, params: &MixtureParams) -> Result<f64, ModelError> {
    check_length(x)?;
    Ok(mix_pmf_unchecked(u64::from(x - 1), params))
}

/// `k` is the number of syllables beyond the obligatory one.
fn mix_pmf_unchecked(k: u64, params: &MixtureParams) -> f64 {
    let (lo, hi) = (params.lambda1, params.lambda2);
    let width = hi - lo;
    if width < DEGENERACY_EPS {
        return poisson_term(k, params.lambda0());
    }
    if width < CANCELLATION_WIDTH {
        // Interval mean of g(λ) = p_k(λ): g(m) + g''(m) w²/24 + O(w⁴).
        let m = params.lambda0();
        let p = |j: i64| {
            if j < 0 {
                0.0
            } else {
                poisson_term(j as u64, m)
            }
        };
        let k = k as i64;
        let second = p(k - 2) - 2.0 * p(k - 1) + p(k);
        return p(k) + second * width * width / 24.0;
    }
    // ∫ p_k = F_k(λ₁) - F_k(λ₂) = S_{k+1}(λ₂) - S_{k+1}(λ₁). Use whichever
    // pair of tails is small so the subtraction keeps its digits.
    let mass = if hi <= (k + 1) as f64 {
        poisson_sf_from(k + 1, hi) - poisson_sf_from(k + 1, lo)
    } else {
        poisson_cdf_below(k + 1, lo) - poisson_cdf_below(k + 1, hi)
    };
    (mass / width).clamp(0.0, 1.0)
}

/// A word-length pmf with finite explicit support `1..=max_length()` and the
/// leftover mass recorded separately.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthPmf {
    probs: Vec<f64>,
    truncation_tail: f64,
}

impl LengthPmf {
    /// Probability of length `x`; zero outside the explicit support.
    pub fn probability(&self, x: u32) -> f64 {
        if x == 0 {
            return 0.0;
        }
        self.probs.get(x as usize - 1).copied().unwrap_or(0.0)
    }

    pub fn max_length(&self) -> u32 {
        self.probs.len() as u32
    }

    /// Mass on lengths above [`max_length`](Self::max_length).
    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    /// `(length, probability)` pairs in ascending length.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32 + 1, p))
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }
}

/// Tabulates the mixture pmf up to the first length whose remaining tail
/// mass drops below `tail_tol`.
pub fn mix_pmf_table(params: &MixtureParams, tail_tol: f64) -> Result<LengthPmf, ModelError> {
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(ModelError::InvalidTailTolerance(tail_tol));
    }
    let mut probs = Vec::new();
    let mut cumulative = 0.0;
    loop {
        let k = probs.len() as u64;
        let p = mix_pmf_unchecked(k, params);
        probs.push(p);
        cumulative += p;
        let tail = 1.0 - cumulative;
        // Past the upper rate the terms only shrink; once they are far below
        // rounding noise the remaining tail is as small as it can be measured.
        let exhausted = k as f64 > params.lambda2 && p < 1e-3 * f64::EPSILON;
        if tail < tail_tol || exhausted {
            return Ok(LengthPmf {
                probs,
                truncation_tail: tail.max(0.0),
            });
        }
        if probs.len() as u32 >= MAX_TABLE_LENGTH {
            return Err(ModelError::SupportTooLong(tail_tol));
        }
    }
}

/// Mean word length `E[X] = 1 + λ₀`.
///
/// Note that [`MixtureParams::lambda0`] alone is the mean *excess* over the
/// obligatory syllable; the two are reported separately everywhere.
pub fn mean_length(params: &MixtureParams) -> f64 {
    1.0 + params.lambda0()
}

/// Rates above this are split into several independent draws for the
/// sequential-inversion Poisson sampler.
const SAMPLER_CHUNK_RATE: f64 = 10.0;

/// Draws `n` word lengths: `λ ~ Uniform(λ₁, λ₂)`, then `X = 1 + Poisson(λ)`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`, so
/// a given `(params, n, seed)` always yields the same sequence.
pub fn sample_lengths(params: &MixtureParams, n: usize, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| draw_length(params, &mut rng)).collect()
}

/// One draw from the mixture using the supplied generator.
pub fn draw_length<R: Rng + ?Sized>(params: &MixtureParams, rng: &mut R) -> u32 {
    let u: f64 = rng.random();
    let rate = params.lambda1 + params.width() * u;
    1 + poisson_draw(rate, rng)
}

fn poisson_draw<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u32 {
    if rate <= 0.0 {
        return 0;
    }
    // Poisson(a + b) = Poisson(a) + Poisson(b); keep each piece small
    // enough that e^(-rate) and the inversion loop stay well conditioned.
    let pieces = (rate / SAMPLER_CHUNK_RATE).ceil().max(1.0);
    let piece_rate = rate / pieces;
    (0..pieces as u64)
        .map(|_| poisson_inversion(piece_rate, rng))
        .sum()
}

fn poisson_inversion<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u32 {
    let u: f64 = rng.random();
    let mut k = 0u32;
    let mut p = (-rate).exp();
    let mut cdf = p;
    while u >= cdf {
        k += 1;
        p *= rate / f64::from(k);
        let next = cdf + p;
        if next == cdf {
            // u landed in the rounding gap at the far tail.
            break;
        }
        cdf = next;
    }
    k
}
