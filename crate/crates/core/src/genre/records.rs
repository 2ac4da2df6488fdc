//! Text-record tables, one fitted text per row.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::estimation::FitResult;

use super::GenreError;

pub const RECORD_HEADER: &str = "label\tlanguage\tgenre\tlambda0\tlambda1\tlambda2\tC\tN";

/// A fitted text as a dot on the `λ₀`–`λ₁` plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextRecord {
    pub label: String,
    pub language: String,
    pub genre: String,
    pub lambda0: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Discrepancy coefficient of the fit.
    pub c: f64,
    pub n: u64,
}

impl TextRecord {
    pub fn from_fit(label: &str, language: &str, genre: &str, fit: &FitResult) -> Self {
        Self {
            label: label.to_string(),
            language: language.to_string(),
            genre: genre.to_string(),
            lambda0: fit.lambda0,
            lambda1: fit.params.lambda1(),
            lambda2: fit.params.lambda2(),
            c: fit.c,
            n: fit.n,
        }
    }

    fn validate(&self) -> Result<(), String> {
        if self.label.is_empty() {
            return Err("label must not be empty".into());
        }
        for (name, v) in [
            ("lambda0", self.lambda0),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("C", self.c),
        ] {
            if !v.is_finite() {
                return Err(format!("{name} is not finite"));
            }
        }
        if self.lambda1 > self.lambda2 {
            return Err(format!(
                "lambda1 {} exceeds lambda2 {}",
                self.lambda1, self.lambda2
            ));
        }
        let mid = 0.5 * (self.lambda1 + self.lambda2);
        if (self.lambda0 - mid).abs() > 1e-9 {
            return Err(format!(
                "lambda0 {} is not the midpoint {mid} of lambda1 and lambda2",
                self.lambda0
            ));
        }
        if self.c < 0.0 {
            return Err(format!("C must be non-negative, got {}", self.c));
        }
        Ok(())
    }
}

/// Parses a record table. The header row is optional; `#` lines and blank
/// lines are skipped.
pub fn parse_records(text: &str) -> Result<Vec<TextRecord>, GenreError> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') || line == RECORD_HEADER {
            continue;
        }
        let err = |message: String| GenreError::Table {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        let [label, language, genre, l0, l1, l2, c, n] = fields[..] else {
            return Err(err(format!(
                "expected 8 tab-separated fields, found {}",
                fields.len()
            )));
        };
        let num = |name: &str, s: &str| -> Result<f64, GenreError> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| err(format!("invalid {name} {s:?}")))
        };
        let record = TextRecord {
            label: label.trim().to_string(),
            language: language.trim().to_string(),
            genre: genre.trim().to_string(),
            lambda0: num("lambda0", l0)?,
            lambda1: num("lambda1", l1)?,
            lambda2: num("lambda2", l2)?,
            c: num("C", c)?,
            n: n.trim()
                .parse()
                .map_err(|_| err(format!("invalid N {n:?}")))?,
        };
        record.validate().map_err(err)?;
        out.push(record);
    }
    Ok(out)
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Writes the header and one row per record. Numbers use the shortest
/// representation that parses back to the same value.
pub fn write_records(records: &[TextRecord]) -> String {
    let mut out = String::new();
    writeln!(out, "{RECORD_HEADER}").unwrap();
    for r in records {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            clean(&r.label),
            clean(&r.language),
            clean(&r.genre),
            r.lambda0,
            r.lambda1,
            r.lambda2,
            r.c,
            r.n
        )
        .unwrap();
    }
    out
}
