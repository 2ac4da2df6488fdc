use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use wordlen::corpus::{
    build_histogram, decode_text, length_vs_log_rank, load_table, parse_table, rank_frequency,
    tokenize, write_table, LanguageProfile,
};
use wordlen::estimation::{fit, FitOptions, FitResult, LengthHistogram, ModelKind};
use wordlen::genre::{
    fit_regression, parse_records, predict, summarize, write_fit_rows, write_records,
    RegressionForm, ReportOptions, TextRecord,
};
use wordlen::model::{sample_lengths, MixtureParams};

use crate::manifest::{parse_manifest, ManifestRow};
use crate::{
    Command, FitArgs, FitFormat, FormArg, InputKind, ModelArg, EXIT_ERROR, EXIT_OK,
    EXIT_UNSATISFACTORY, PROFILE_DIR_ENV,
};

pub(crate) fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Fit {
            input,
            input_kind,
            format,
            output,
            fit,
        } => cmd_fit(&input, input_kind, format, output.as_deref(), &fit, out),
        Command::Simulate {
            lambda1,
            lambda2,
            n,
            seed,
            output,
        } => cmd_simulate(lambda1, lambda2, n, seed, output.as_deref(), out),
        Command::Batch {
            manifest,
            jobs,
            output,
            fit,
        } => cmd_batch(&manifest, jobs, output.as_deref(), &fit, out, err),
        Command::Regress {
            records,
            form,
            lambda1_min,
            x_shift,
            genre,
            predict,
        } => cmd_regress(
            &records,
            form,
            lambda1_min,
            x_shift,
            genre.as_deref(),
            &predict,
            out,
        ),
        Command::Report {
            records,
            out_dir,
            lambda1_min,
            x_shift,
            alpha_genre,
            curve_points,
        } => {
            let opts = ReportOptions {
                lambda1_min,
                x_shift,
                alpha_genre,
                curve_points,
            };
            cmd_report(&records, &out_dir, &opts, out)
        }
        Command::Tabulate { input, profile } => {
            let profile = resolve_profile(&profile)?;
            let words = read_words(&input, &profile)?;
            out.write_all(write_table(&build_histogram(&words, &profile)).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Rank {
            input,
            profile,
            bins,
        } => cmd_rank(&input, &profile, bins, out),
    }
}

/// Finds a language profile by path, by name in `$WORDLEN_PROFILE_DIR`, or
/// among the built-ins, in that order.
pub fn resolve_profile(name: &str) -> Result<LanguageProfile> {
    let as_path = Path::new(name);
    if as_path.is_file() {
        return LanguageProfile::load(as_path).with_context(|| format!("profile {name}"));
    }
    if let Some(dir) = std::env::var_os(PROFILE_DIR_ENV) {
        let candidate = PathBuf::from(dir).join(format!("{name}.toml"));
        if candidate.is_file() {
            return LanguageProfile::load(&candidate)
                .with_context(|| format!("profile {}", candidate.display()));
        }
    }
    LanguageProfile::builtin(name).with_context(|| {
        format!(
            "unknown profile {name:?} (built-ins: {})",
            LanguageProfile::builtin_names().join(", ")
        )
    })
}

fn fit_options(args: &FitArgs) -> Result<FitOptions> {
    let opts = FitOptions {
        min_expected: args.min_expected,
        lambda_max: args.lambda_max,
        nested_gain: args.nested_gain,
        ..FitOptions::default()
    };
    opts.validate()?;
    Ok(opts)
}

fn model_kind(m: ModelArg) -> ModelKind {
    match m {
        ModelArg::Mixed => ModelKind::Mixed,
        ModelArg::Cf => ModelKind::CebanovFucks,
    }
}

fn read_words(path: &Path, profile: &LanguageProfile) -> Result<Vec<String>> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = decode_text(&bytes).with_context(|| path.display().to_string())?;
    Ok(tokenize(text, profile))
}

fn is_text_path(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("txt") || e.eq_ignore_ascii_case("text"))
}

fn load_histogram(input: &str, kind: InputKind, profile: &str) -> Result<LengthHistogram> {
    if input == "-" {
        if kind == InputKind::Text {
            bail!("raw text cannot be read from stdin; pass a file");
        }
        let mut bytes = Vec::new();
        std::io::stdin().read_to_end(&mut bytes)?;
        return parse_table(decode_text(&bytes).context("stdin")?).context("stdin");
    }
    let path = Path::new(input);
    let text_mode = match kind {
        InputKind::Auto => is_text_path(path),
        InputKind::Table => false,
        InputKind::Text => true,
    };
    if text_mode {
        let profile = resolve_profile(profile)?;
        let words = read_words(path, &profile)?;
        Ok(build_histogram(&words, &profile))
    } else {
        let file = std::fs::File::open(path).with_context(|| format!("opening {input}"))?;
        Ok(load_table(file).with_context(|| input.to_string())?)
    }
}

const FIT_HEADER: &str =
    "model\tlambda1\tlambda2\tlambda0\tmean_length\tchi_square\tC\tdof\tN\tbins\tdegenerate\tsatisfactory";

fn model_name(m: ModelKind) -> &'static str {
    match m {
        ModelKind::Mixed => "mixed",
        ModelKind::CebanovFucks => "cf",
    }
}

pub(crate) fn render_fit(r: &FitResult, format: FitFormat) -> String {
    let mut s = String::new();
    match format {
        FitFormat::Tsv => {
            writeln!(s, "{FIT_HEADER}").unwrap();
            writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                model_name(r.model),
                r.params.lambda1(),
                r.params.lambda2(),
                r.lambda0,
                r.mean_length,
                r.chi_square,
                r.c,
                r.dof,
                r.n,
                r.bins,
                r.degenerate,
                r.satisfactory
            )
            .unwrap();
        }
        FitFormat::Text => {
            let rows: [(&str, String); 12] = [
                ("model", model_name(r.model).to_string()),
                ("lambda1", format!("{:.6}", r.params.lambda1())),
                ("lambda2", format!("{:.6}", r.params.lambda2())),
                ("lambda0", format!("{:.6}", r.lambda0)),
                ("mean length", format!("{:.6}", r.mean_length)),
                ("chi-square", format!("{:.4}", r.chi_square)),
                ("C", format!("{:.6}", r.c)),
                ("dof", r.dof.to_string()),
                ("N", r.n.to_string()),
                ("bins", r.bins.to_string()),
                ("degenerate", r.degenerate.to_string()),
                ("satisfactory", r.satisfactory.to_string()),
            ];
            for (k, v) in rows {
                writeln!(s, "{k:<13}{v}").unwrap();
            }
        }
        FitFormat::Json => {
            writeln!(s, "{}", serde_json::to_string_pretty(r).unwrap()).unwrap();
        }
    }
    s
}

fn emit(output: Option<&Path>, body: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(body.as_bytes())?),
    }
}

fn cmd_fit(
    input: &str,
    kind: InputKind,
    format: FitFormat,
    output: Option<&Path>,
    args: &FitArgs,
    out: &mut dyn Write,
) -> Result<i32> {
    let opts = fit_options(args)?;
    let hist = load_histogram(input, kind, &args.profile)?;
    let result =
        fit(&hist, model_kind(args.model), &opts).with_context(|| format!("fitting {input}"))?;
    emit(output, &render_fit(&result, format), out)?;
    Ok(if result.satisfactory {
        EXIT_OK
    } else {
        EXIT_UNSATISFACTORY
    })
}

fn cmd_simulate(
    lambda1: f64,
    lambda2: f64,
    n: usize,
    seed: u64,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let params = MixtureParams::new(lambda1, lambda2)?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let hist = LengthHistogram::from_lengths(sample_lengths(&params, n, seed))?;
    emit(output, &write_table(&hist), out)?;
    Ok(EXIT_OK)
}

fn fit_row(row: &ManifestRow, args: &FitArgs, opts: &FitOptions) -> Result<TextRecord> {
    let input = row.path.to_string_lossy();
    let hist = load_histogram(&input, InputKind::Auto, &args.profile)?;
    let result = fit(&hist, model_kind(args.model), opts)?;
    Ok(TextRecord::from_fit(
        &row.label,
        &row.language,
        &row.genre,
        &result,
    ))
}

fn cmd_batch(
    manifest: &Path,
    jobs: Option<usize>,
    output: Option<&Path>,
    args: &FitArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let opts = fit_options(args)?;
    resolve_profile(&args.profile)?;
    let text =
        std::fs::read(manifest).with_context(|| format!("reading {}", manifest.display()))?;
    let text = decode_text(&text).with_context(|| manifest.display().to_string())?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(text, base);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    // Collecting an indexed parallel iterator keeps manifest order.
    let results: Vec<std::result::Result<TextRecord, (usize, String, String)>> =
        pool.install(|| {
            entries
                .par_iter()
                .map(|entry| match entry {
                    Ok(row) => fit_row(row, args, &opts)
                        .map_err(|e| (row.line, row.label.clone(), format!("{e:#}"))),
                    Err(e) => Err((e.line, e.label.clone(), e.message.clone())),
                })
                .collect()
        });

    let mut records = Vec::new();
    let mut failures = 0;
    for r in results {
        match r {
            Ok(rec) => records.push(rec),
            Err((line, label, message)) => {
                failures += 1;
                writeln!(err, "error\tline {line}\t{label}\t{message}")?;
            }
        }
    }
    emit(output, &write_records(&records), out)?;
    Ok(if failures > 0 { EXIT_ERROR } else { EXIT_OK })
}

fn read_records(path: &Path) -> Result<Vec<TextRecord>> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = decode_text(&bytes).with_context(|| path.display().to_string())?;
    parse_records(text).with_context(|| path.display().to_string())
}

fn cmd_regress(
    records: &Path,
    form: FormArg,
    lambda1_min: f64,
    x_shift: f64,
    genre: Option<&str>,
    at: &[f64],
    out: &mut dyn Write,
) -> Result<i32> {
    let records = read_records(records)?;
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| genre.is_none_or(|g| r.genre == g))
        .map(|r| (r.lambda0, r.lambda1))
        .collect();
    let form = match form {
        FormArg::Linear => RegressionForm::Linear,
        FormArg::ShiftedPower => RegressionForm::ShiftedPower,
    };
    let fit = fit_regression(&points, form, lambda1_min, x_shift)?;
    let mut s = String::from("form\tparameter\tvalue\n");
    write_fit_rows(&mut s, &fit);
    if !at.is_empty() {
        s.push_str("\nlambda0\tlambda1\n");
        for &x in at {
            let y = predict(&fit, x)?;
            writeln!(s, "{x}\t{y}")?;
        }
    }
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_report(
    records: &Path,
    out_dir: &Path,
    opts: &ReportOptions,
    out: &mut dyn Write,
) -> Result<i32> {
    let records = read_records(records)?;
    let report = summarize(&records, opts);
    std::fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, body) in report.files() {
        let path = out_dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(EXIT_OK)
}

fn cmd_rank(input: &Path, profile: &str, bins: usize, out: &mut dyn Write) -> Result<i32> {
    let profile = resolve_profile(profile)?;
    let words = read_words(input, &profile)?;
    let ranked = rank_frequency(&words, &profile)?;
    let fit = length_vs_log_rank(&ranked, bins)?;
    let mut s = String::from("first_rank\tlast_rank\tlog_rank\tmean_length\n");
    for b in &fit.bins {
        writeln!(
            s,
            "{}\t{}\t{}\t{}",
            b.first_rank, b.last_rank, b.log_rank, b.mean_length
        )?;
    }
    writeln!(
        s,
        "\nslope\t{}\nintercept\t{}\nr_squared\t{}",
        fit.slope, fit.intercept, fit.r_squared
    )?;
    out.write_all(s.as_bytes())?;
    Ok(EXIT_OK)
}
