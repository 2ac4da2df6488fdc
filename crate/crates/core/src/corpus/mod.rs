//! From raw text or published tables to length histograms.

mod profile;
mod rank;
mod table;
mod text;

use thiserror::Error;

pub use profile::{LanguageProfile, Rule, PROFILE_VERSION};
pub use rank::{
    length_vs_log_rank, log_rank_regression, rank_frequency, LogRankBin, LogRankFit, RankedWord,
    RankedWordList,
};
pub use table::{load_table, parse_table, write_table};
pub use text::{build_histogram, count_syllables, decode_text, tokenize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },
    #[error("line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("table has no data rows")]
    EmptyTable,
    #[error("invalid profile: {0}")]
    Profile(String),
    #[error("input contains no words")]
    EmptyInput,
    #[error("need at least 2 rank bins with data, found {found}")]
    TooFewRankBins { found: usize },
    #[error("regression is degenerate (constant abscissa or response)")]
    DegenerateRegression,
    #[error("{0}")]
    Io(String),
}
