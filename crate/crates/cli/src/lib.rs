//! Command-line front end for quiverforge: JSON documents in, check reports out.

pub mod commands;
pub mod document;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Options, Outcome};
use document::{corpus_dir, load, load_dir, InputError};
use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "quiverforge", version, about = "Exact computations with quivers, modulations and path algebras")]
pub struct Cli {
    /// Truncation degree for generalized path algebras and loop elimination.
    #[arg(long, global = true, value_name = "L")]
    pub truncate: Option<usize>,
    /// Seed for randomly generated representations.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Vertex cap for brute-force isomorphism search.
    #[arg(long, global = true, value_name = "K", default_value_t = 10)]
    pub max_iso_vertices: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Natural quiver of a bound quiver algebra or blow-up.
    NaturalQuiver { file: PathBuf },
    /// Natural valued quiver, via the associated generalized path algebra.
    NaturalValuedQuiver { file: PathBuf },
    /// Valued Ext-quiver, with both routes to dim Ext¹.
    ExtQuiver { file: PathBuf },
    /// Run every applicable identity on a file, or on a whole directory.
    Verify {
        /// A document, or a directory with --all.
        path: Option<PathBuf>,
        /// Verify every document in the directory (default: the corpus).
        #[arg(long)]
        all: bool,
    },
    /// Classify a modulation, group species or generalized path algebra.
    Classify { file: PathBuf },
    /// Multiply two elements of a generalized path algebra.
    GpaMul { file: PathBuf, x: String, y: String },
    /// Move loops into truncated vertex algebras.
    LoopEliminate { file: PathBuf },
    /// Search for an isomorphism between two documents of the same kind.
    Iso { first: PathBuf, second: PathBuf },
    /// Check a differential on a generalized path algebra.
    DiffCheck { file: PathBuf },
    /// Round-trip a representation through the module category and back.
    RepRoundtrip { file: PathBuf },
    /// DOT rendering of the underlying quiver.
    Dot { file: PathBuf },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::NaturalQuiver { .. } => "natural-quiver",
        Command::NaturalValuedQuiver { .. } => "natural-valued-quiver",
        Command::ExtQuiver { .. } => "ext-quiver",
        Command::Verify { .. } => "verify",
        Command::Classify { .. } => "classify",
        Command::GpaMul { .. } => "gpa-mul",
        Command::LoopEliminate { .. } => "loop-eliminate",
        Command::Iso { .. } => "iso",
        Command::DiffCheck { .. } => "diff-check",
        Command::RepRoundtrip { .. } => "rep-roundtrip",
        Command::Dot { .. } => "dot",
    }
}

enum Output {
    Outcome(Outcome),
    Dot(String),
}

fn execute(cli: &Cli) -> Result<Output, InputError> {
    let opts = Options {
        truncate: cli.truncate,
        seed: cli.seed,
        max_iso_vertices: cli.max_iso_vertices,
    };
    let out = match &cli.command {
        Command::NaturalQuiver { file } => commands::natural_quiver_cmd(&load(file)?)?,
        Command::NaturalValuedQuiver { file } => commands::natural_valued_quiver_cmd(&load(file)?)?,
        Command::ExtQuiver { file } => commands::ext_quiver_cmd(&load(file)?)?,
        Command::Verify { path, all } => {
            let docs = match path {
                Some(p) if p.is_dir() => load_dir(p)?,
                Some(p) if !*all => vec![load(p)?],
                Some(p) => load_dir(p)?,
                None => load_dir(&corpus_dir())?,
            };
            commands::verify_all(&docs, &opts)?
        }
        Command::Classify { file } => commands::classify_cmd(&load(file)?, &opts)?,
        Command::GpaMul { file, x, y } => commands::gpa_mul_cmd(&load(file)?, x, y, &opts)?,
        Command::LoopEliminate { file } => commands::loop_eliminate_cmd(&load(file)?, &opts)?,
        Command::Iso { first, second } => commands::iso_cmd(&load(first)?, &load(second)?, &opts)?,
        Command::DiffCheck { file } => commands::diff_check_cmd(&load(file)?, &opts)?,
        Command::RepRoundtrip { file } => commands::rep_roundtrip_cmd(&load(file)?, &opts)?,
        Command::Dot { file } => return Ok(Output::Dot(commands::dot_cmd(&load(file)?, &opts)?)),
    };
    Ok(Output::Outcome(out))
}

/// Runs the CLI, writing to the given streams. Exit code 0 when every check
/// passes, 1 when one fails, 2 on unreadable or invalid input.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let result = execute(&cli);
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match output {
        Output::Dot(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Output::Outcome(o) => {
            let report = Report::new(command_name(&cli.command), o.sections);
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
                Format::Dot => match o.dot {
                    Some(d) => d,
                    None => {
                        let _ = writeln!(err, "error: {} has no DOT rendering", report.command);
                        return 2;
                    }
                },
            };
            let _ = write!(out, "{text}");
            if report.passed {
                0
            } else {
                1
            }
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
