//! Report tables and figure datasets for a set of fitted texts.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::stats::{mean, std_dev};

use super::svg::{Plot, Series};
use super::{
    completion_coefficient, fit_linear, fit_shifted_power, Curve, RegressionFit, TextRecord,
    LAMBDA1_MIN, X_SHIFT,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub lambda1_min: f64,
    pub x_shift: f64,
    /// Restricts the α figure to one genre (e.g. letters); all records otherwise.
    pub alpha_genre: Option<String>,
    /// Samples per fitted curve.
    pub curve_points: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            lambda1_min: LAMBDA1_MIN,
            x_shift: X_SHIFT,
            alpha_genre: None,
            curve_points: 50,
        }
    }
}

/// One numbered row of the text listing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dot {
    pub number: usize,
    pub record: TextRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub form: String,
    pub lambda0: f64,
    pub lambda1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaPoint {
    pub number: usize,
    pub label: String,
    pub lambda0: f64,
    pub alpha: f64,
    pub in_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub lambda1_min: f64,
    pub dots: Vec<Dot>,
    pub linear: Option<RegressionFit>,
    pub shifted_power: Option<RegressionFit>,
    pub curves: Vec<CurveSample>,
    pub alpha_genre: Option<String>,
    pub alpha_points: Vec<AlphaPoint>,
    pub alpha_mean: Option<f64>,
    pub alpha_std_dev: Option<f64>,
    pub alpha_std_dev_population: Option<f64>,
    /// Why a fit or a point was left out.
    pub notes: Vec<String>,
}

fn form_name(curve: &Curve) -> &'static str {
    match curve {
        Curve::Linear { .. } => "linear",
        Curve::ShiftedPower { .. } => "shifted-power",
    }
}

fn sample_curve(fit: &RegressionFit, lo: f64, hi: f64, n: usize) -> Vec<CurveSample> {
    let n = n.max(2);
    (0..n)
        .filter_map(|i| {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            fit.curve.evaluate(x).ok().map(|y| CurveSample {
                form: form_name(&fit.curve).to_string(),
                lambda0: x,
                lambda1: y,
            })
        })
        .collect()
}

/// Builds the listing, both regressions with sampled curves, and the α
/// scatter with its mean. Records that cannot enter a fit are noted, never
/// fatal; an empty input yields an empty report.
pub fn summarize(records: &[TextRecord], opts: &ReportOptions) -> Report {
    let dots: Vec<Dot> = records
        .iter()
        .enumerate()
        .map(|(i, r)| Dot {
            number: i + 1,
            record: r.clone(),
        })
        .collect();
    let points: Vec<(f64, f64)> = records.iter().map(|r| (r.lambda0, r.lambda1)).collect();
    let mut notes = Vec::new();

    let linear = match fit_linear(&points) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("linear fit skipped: {e}"));
            None
        }
    };
    let shifted_power = match fit_shifted_power(&points, opts.lambda1_min, opts.x_shift) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("shifted-power fit skipped: {e}"));
            None
        }
    };
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.0), hi.max(p.0))
        });
    let mut curves = Vec::new();
    for fit in linear.iter().chain(shifted_power.iter()) {
        curves.extend(sample_curve(fit, lo, hi, opts.curve_points));
    }

    let mut alpha_points = Vec::new();
    for dot in &dots {
        let r = &dot.record;
        if opts.alpha_genre.as_ref().is_some_and(|g| *g != r.genre) {
            continue;
        }
        match completion_coefficient(r.lambda0, r.lambda1, opts.lambda1_min) {
            Ok(c) => {
                if !c.in_range {
                    notes.push(format!(
                        "dot {} ({}): alpha {} outside [0, 1]",
                        dot.number, r.label, c.alpha
                    ));
                }
                alpha_points.push(AlphaPoint {
                    number: dot.number,
                    label: r.label.clone(),
                    lambda0: r.lambda0,
                    alpha: c.alpha,
                    in_range: c.in_range,
                });
            }
            Err(e) => notes.push(format!(
                "dot {} ({}) has no alpha: {e}",
                dot.number, r.label
            )),
        }
    }
    let alphas: Vec<f64> = alpha_points.iter().map(|p| p.alpha).collect();

    Report {
        lambda1_min: opts.lambda1_min,
        dots,
        linear,
        shifted_power,
        curves,
        alpha_genre: opts.alpha_genre.clone(),
        alpha_mean: mean(&alphas),
        alpha_std_dev: std_dev(&alphas, 1),
        alpha_std_dev_population: std_dev(&alphas, 0),
        alpha_points,
        notes,
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "NA".to_string())
}

/// `form<TAB>parameter<TAB>value` rows for one fit, without a header.
pub fn write_fit_rows(out: &mut String, fit: &RegressionFit) {
    let form = form_name(&fit.curve);
    match fit.curve {
        Curve::Linear { intercept, slope } => {
            writeln!(out, "{form}\ta\t{intercept}").unwrap();
            writeln!(out, "{form}\tb\t{slope}").unwrap();
        }
        Curve::ShiftedPower {
            c,
            p,
            lambda1_min,
            x_shift,
        } => {
            writeln!(out, "{form}\tc\t{c}").unwrap();
            writeln!(out, "{form}\tp\t{p}").unwrap();
            writeln!(out, "{form}\tlambda1_min\t{lambda1_min}").unwrap();
            writeln!(out, "{form}\tx_shift\t{x_shift}").unwrap();
        }
    }
    writeln!(out, "{form}\tr_squared\t{}", fit.r_squared).unwrap();
    writeln!(out, "{form}\tpoints\t{}", fit.points).unwrap();
}

impl Report {
    /// Numbered listing of texts with language and genre.
    pub fn table_tsv(&self) -> String {
        let mut out =
            String::from("dot\tlabel\tlanguage\tgenre\tlambda0\tlambda1\tlambda2\tC\tN\n");
        for d in &self.dots {
            let r = &d.record;
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                d.number, r.label, r.language, r.genre, r.lambda0, r.lambda1, r.lambda2, r.c, r.n
            )
            .unwrap();
        }
        out
    }

    /// Coefficients and R² of both regressions, with notes as comments.
    pub fn fits_tsv(&self) -> String {
        let mut out = String::from("form\tparameter\tvalue\n");
        for fit in self.linear.iter().chain(self.shifted_power.iter()) {
            write_fit_rows(&mut out, fit);
        }
        for n in &self.notes {
            writeln!(out, "# {n}").unwrap();
        }
        out
    }

    pub fn lambda_points_tsv(&self) -> String {
        let mut out = String::from("dot\tlabel\tlambda0\tlambda1\n");
        for d in &self.dots {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                d.number, d.record.label, d.record.lambda0, d.record.lambda1
            )
            .unwrap();
        }
        out
    }

    pub fn lambda_curves_tsv(&self) -> String {
        let mut out = String::from("form\tlambda0\tlambda1\n");
        for c in &self.curves {
            writeln!(out, "{}\t{}\t{}", c.form, c.lambda0, c.lambda1).unwrap();
        }
        out
    }

    pub fn alpha_points_tsv(&self) -> String {
        let mut out = String::from("dot\tlabel\tlambda0\talpha\tin_range\n");
        for p in &self.alpha_points {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                p.number, p.label, p.lambda0, p.alpha, p.in_range
            )
            .unwrap();
        }
        out
    }

    pub fn alpha_summary_tsv(&self) -> String {
        let mut out = String::from("statistic\tvalue\n");
        writeln!(out, "genre\t{}", self.alpha_genre.as_deref().unwrap_or("*")).unwrap();
        writeln!(out, "lambda1_min\t{}", self.lambda1_min).unwrap();
        writeln!(out, "count\t{}", self.alpha_points.len()).unwrap();
        writeln!(out, "mean\t{}", opt(self.alpha_mean)).unwrap();
        writeln!(out, "std_dev_sample\t{}", opt(self.alpha_std_dev)).unwrap();
        writeln!(
            out,
            "std_dev_population\t{}",
            opt(self.alpha_std_dev_population)
        )
        .unwrap();
        out
    }

    /// `λ₁` against `λ₀` with both fitted curves.
    pub fn lambda_svg(&self) -> String {
        let mut curves = Vec::new();
        for (name, form) in [("linear", "linear"), ("shifted-power", "shifted-power")] {
            let points: Vec<(f64, f64)> = self
                .curves
                .iter()
                .filter(|c| c.form == form)
                .map(|c| (c.lambda0, c.lambda1))
                .collect();
            if !points.is_empty() {
                curves.push(Series { name, points });
            }
        }
        Plot {
            title: "lambda1 versus lambda0",
            x_label: "lambda0",
            y_label: "lambda1",
            scatter: self
                .dots
                .iter()
                .map(|d| {
                    (
                        format!("{} {}", d.number, d.record.label),
                        d.record.lambda0,
                        d.record.lambda1,
                    )
                })
                .collect(),
            curves,
            hlines: Vec::new(),
        }
        .render()
    }

    /// Completion coefficient against `λ₀` with a horizontal line at the mean.
    pub fn alpha_svg(&self) -> String {
        Plot {
            title: "completion coefficient versus lambda0",
            x_label: "lambda0",
            y_label: "alpha",
            scatter: self
                .alpha_points
                .iter()
                .map(|p| (format!("{} {}", p.number, p.label), p.lambda0, p.alpha))
                .collect(),
            curves: Vec::new(),
            hlines: self
                .alpha_mean
                .map(|m| ("alpha-mean", m))
                .into_iter()
                .collect(),
        }
        .render()
    }

    /// Every artifact as `(file name, contents)`, in a fixed order.
    pub fn files(&self) -> Vec<(&'static str, String)> {
        vec![
            ("table.tsv", self.table_tsv()),
            ("fits.tsv", self.fits_tsv()),
            ("lambda_points.tsv", self.lambda_points_tsv()),
            ("lambda_curves.tsv", self.lambda_curves_tsv()),
            ("lambda.svg", self.lambda_svg()),
            ("alpha_points.tsv", self.alpha_points_tsv()),
            ("alpha_summary.tsv", self.alpha_summary_tsv()),
            ("alpha.svg", self.alpha_svg()),
        ]
    }
}
