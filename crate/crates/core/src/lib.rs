//! Word-length modelling with the Čebanov-Fucks distribution under a
//! uniformly distributed rate parameter.
//!
//! - [`model`]: pmf evaluation, tabulation, moments and sampling.
//! - [`estimation`]: minimum-χ² fitting and the discrepancy coefficient.
//! - [`corpus`]: tokenizing, syllable counting, histogram tables, rank lists.
//! - [`genre`]: completion coefficient, `λ₁(λ₀)` regressions and reports.

pub mod corpus;
pub mod estimation;
pub mod genre;
pub mod model;
pub mod optimize;
pub mod special;
pub mod stats;

pub use estimation::{
    bin_histogram, chi_square, discrepancy, fit, fit_cebanov_fucks, fit_mixture, BinnedData,
    EstimationError, FitOptions, FitResult, LengthHistogram, ModelKind,
};
pub use genre::{
    alpha_summary, completion_coefficient, fit_linear, fit_shifted_power, predict, summarize,
    RegressionFit, Report, TextRecord,
};
pub use model::{
    cf_pmf, mean_length, mix_pmf, mix_pmf_table, sample_lengths, LengthPmf, MixtureParams,
    ModelError,
};
