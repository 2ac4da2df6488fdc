//! `wordlen` command line: fit, simulate, batch, regress, report.
//!
//! Exit codes: 0 on success (or a satisfactory fit), 1 when a fit completed
//! but is unsatisfactory, 2 on usage or data errors.

mod commands;
pub mod manifest;

use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

pub use commands::resolve_profile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSATISFACTORY: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Directory searched for `<name>.toml` language profiles.
pub const PROFILE_DIR_ENV: &str = "WORDLEN_PROFILE_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "wordlen",
    version,
    about = "Word-length distributions under the uniform-mixed Cebanov-Fucks model"
)]
pub struct Cli {
    /// Print a JSON description of all subcommands and options, then exit.
    #[arg(long, global = true)]
    pub help_json: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Mixed,
    Cf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FitFormat {
    Tsv,
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    /// `.txt`/`.text` files are raw text, everything else a length table.
    Auto,
    Table,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Linear,
    ShiftedPower,
}

#[derive(Debug, Clone, clap::Args)]
pub struct FitArgs {
    /// Model to fit.
    #[arg(long, value_enum, default_value = "mixed")]
    pub model: ModelArg,
    /// Minimum expected count per chi-square cell.
    #[arg(long, default_value_t = 5.0)]
    pub min_expected: f64,
    /// Upper bound for lambda1 and lambda2.
    #[arg(long, default_value_t = 10.0)]
    pub lambda_max: f64,
    /// Chi-square gain a free interval must achieve over the plain law (0 disables).
    #[arg(long, default_value_t = 3.841)]
    pub nested_gain: f64,
    /// Language profile: built-in name, profile name in $WORDLEN_PROFILE_DIR, or a TOML path.
    #[arg(long, default_value = "generic")]
    pub profile: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit the model to a length table or raw text.
    Fit {
        /// Input file, or `-` for a table on stdin.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        input_kind: InputKind,
        #[arg(long, value_enum, default_value = "tsv")]
        format: FitFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Draw a synthetic length table from the mixture.
    Simulate {
        #[arg(long)]
        lambda1: f64,
        #[arg(long)]
        lambda2: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fit every input listed in a manifest and emit a record table.
    Batch {
        /// TSV with columns label, language, genre, path.
        #[arg(long)]
        manifest: PathBuf,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Fit a lambda1(lambda0) law to a record table.
    Regress {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long, default_value_t = 0.5)]
        lambda1_min: f64,
        #[arg(long, default_value_t = 1.0)]
        x_shift: f64,
        /// Only use records of this genre.
        #[arg(long)]
        genre: Option<String>,
        /// Comma-separated lambda0 values to evaluate the fitted curve at.
        #[arg(long, value_delimiter = ',')]
        predict: Vec<f64>,
    },
    /// Write the text listing, figure datasets and SVG figures for a record table.
    Report {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        lambda1_min: f64,
        #[arg(long, default_value_t = 1.0)]
        x_shift: f64,
        /// Restrict the completion-coefficient figure to one genre.
        #[arg(long)]
        alpha_genre: Option<String>,
        #[arg(long, default_value_t = 50)]
        curve_points: usize,
    },
    /// Tokenize raw text and print its length table.
    Tabulate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "generic")]
        profile: String,
    },
    /// Mean word length against log rank for raw text.
    Rank {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "generic")]
        profile: String,
        /// Number of rank-doubling bins.
        #[arg(long, default_value_t = 10)]
        bins: usize,
    },
}

/// JSON description of the command tree, for tooling.
pub fn help_json() -> serde_json::Value {
    fn describe(cmd: &clap::Command) -> serde_json::Value {
        let args: Vec<serde_json::Value> = cmd
            .get_arguments()
            .filter(|a| a.get_id() != "help" && a.get_id() != "version")
            .map(|a| {
                serde_json::json!({
                    "name": a.get_id().as_str(),
                    "long": a.get_long(),
                    "required": a.is_required_set(),
                    "default": a.get_default_values().iter().map(|v| v.to_string_lossy().into_owned()).collect::<Vec<_>>(),
                    "values": a.get_possible_values().iter().map(|v| v.get_name().to_string()).collect::<Vec<_>>(),
                    "help": a.get_help().map(|h| h.to_string()),
                })
            })
            .collect();
        let subcommands: Vec<serde_json::Value> = cmd
            .get_subcommands()
            .filter(|c| c.get_name() != "help")
            .map(describe)
            .collect();
        serde_json::json!({
            "name": cmd.get_name(),
            "about": cmd.get_about().map(|h| h.to_string()),
            "arguments": args,
            "subcommands": subcommands,
        })
    }
    let cmd = Cli::command();
    let mut v = describe(&cmd);
    v["version"] = serde_json::Value::from(cmd.get_version().unwrap_or_default());
    v["exit_codes"] = serde_json::json!({"0": "success / satisfactory fit", "1": "unsatisfactory fit", "2": "usage or data error"});
    v
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    if cli.help_json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&help_json()).unwrap()
        );
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(err, "{}", Cli::command().render_usage());
        return EXIT_ERROR;
    };
    match commands::execute(command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}
