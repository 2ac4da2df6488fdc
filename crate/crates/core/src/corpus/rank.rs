//! Rank-frequency lists and the word-length versus log-rank diagnostic.
//!
//! Under Zipf-Mandelbrot rank-frequency behaviour with optimal coding, the
//! expected length of a word grows linearly in the logarithm of its rank.
//! [`length_vs_log_rank`] checks that premise on a corpus.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::stats::ols;

use super::profile::LanguageProfile;
use super::text::count_syllables;
use super::CorpusError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedWord {
    pub rank: usize,
    pub word: String,
    pub frequency: u64,
    pub syllables: u32,
}

/// Word types by descending frequency; ties in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedWordList {
    entries: Vec<RankedWord>,
}

impl RankedWordList {
    pub fn entries(&self) -> &[RankedWord] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of frequencies, i.e. the token count.
    pub fn total_frequency(&self) -> u64 {
        self.entries.iter().map(|e| e.frequency).sum()
    }
}

pub fn rank_frequency<S: AsRef<str>>(
    words: &[S],
    profile: &LanguageProfile,
) -> Result<RankedWordList, CorpusError> {
    if words.is_empty() {
        return Err(CorpusError::EmptyInput);
    }
    let mut freq: HashMap<&str, u64> = HashMap::new();
    for w in words {
        *freq.entry(w.as_ref()).or_insert(0) += 1;
    }
    let mut types: Vec<(&str, u64)> = freq.into_iter().collect();
    types.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let entries = types
        .into_iter()
        .enumerate()
        .map(|(i, (word, frequency))| RankedWord {
            rank: i + 1,
            word: word.to_string(),
            frequency,
            syllables: count_syllables(word, profile),
        })
        .collect();
    Ok(RankedWordList { entries })
}

/// One rank-doubling bin `[first_rank, last_rank]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRankBin {
    pub first_rank: usize,
    pub last_rank: usize,
    /// Mean of `ln(rank)` over the bin: the log of its geometric-mean rank.
    pub log_rank: f64,
    pub mean_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRankFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub bins: Vec<LogRankBin>,
}

/// Regresses mean syllable length per rank bin on log rank.
pub fn length_vs_log_rank(ranked: &RankedWordList, bins: usize) -> Result<LogRankFit, CorpusError> {
    let lengths: Vec<f64> = ranked
        .entries
        .iter()
        .map(|e| f64::from(e.syllables))
        .collect();
    log_rank_regression(&lengths, bins)
}

/// Same regression over arbitrary per-rank lengths (`lengths[r - 1]` is the
/// length at rank `r`).
///
/// Bin `b` covers ranks `2^b ..= 2^(b+1) - 1`; the last of `bins` bins also
/// takes every higher rank.
pub fn log_rank_regression(lengths: &[f64], bins: usize) -> Result<LogRankFit, CorpusError> {
    if bins < 2 {
        return Err(CorpusError::TooFewRankBins { found: bins });
    }
    let mut out = Vec::new();
    let mut first = 1usize;
    for b in 0..bins {
        if first > lengths.len() {
            break;
        }
        let last = if b + 1 == bins {
            lengths.len()
        } else {
            (first * 2 - 1).min(lengths.len())
        };
        let ranks = first..=last;
        let count = (last - first + 1) as f64;
        let log_rank = ranks.clone().map(|r| (r as f64).ln()).sum::<f64>() / count;
        let mean_length = lengths[first - 1..last].iter().sum::<f64>() / count;
        out.push(LogRankBin {
            first_rank: first,
            last_rank: last,
            log_rank,
            mean_length,
        });
        first = last + 1;
    }
    if out.len() < 2 {
        return Err(CorpusError::TooFewRankBins { found: out.len() });
    }
    let xs: Vec<f64> = out.iter().map(|b| b.log_rank).collect();
    let ys: Vec<f64> = out.iter().map(|b| b.mean_length).collect();
    let fit = ols(&xs, &ys).ok_or(CorpusError::DegenerateRegression)?;
    let r_squared = fit.r_squared().ok_or(CorpusError::DegenerateRegression)?;
    Ok(LogRankFit {
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared,
        bins: out,
    })
}
