//! The `gammaq` command-line front end.
//!
//! Exit codes: 0 pass, 1 usage or internal failure, 2 mathematical defect,
//! 3 schema error, 4 solver cap failure, 5 equivalence not found.

mod artifact;
mod commands;
mod input;
mod report;
mod tables;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use artifact::{Artifact, ArtifactSettings, DefectSummary, Tables};
pub use commands::{
    catalog, catalog_document, catalog_entries, check, classical_checks, compare, default_artifact_path, quantize,
    verify_artifact, Output, Tuning,
};
pub use input::{
    document_of, BracketEntry, CobracketEntry, GroupDocument, InputDocument, Model, OptionsDocument, PairEntry,
    SchemaError,
};
pub use report::{CheckResult, CheckStatus, Outcome, Report};
pub use tables::{series_doc, series_from_doc, SeriesDoc, TermDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Parser)]
#[command(name = "gammaq", version, about = "Exact checks and truncated quantization of Γ-Lie bialgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock timings in reports.
    #[arg(long, global = true, value_enum, default_value_t = Toggle::Off)]
    pub timestamps: Toggle,
    /// Truncation order N in ℏ.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Per-leg degree cap offset: order-k unknowns have legs of degree ≤ k + cap.
    #[arg(long, global = true)]
    pub degree_cap: Option<usize>,
    /// Comma-separated non-identity group elements fixing the solve order.
    #[arg(long, global = true, value_delimiter = ',')]
    pub seed_order: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every applicable classical check.
    Check { input: PathBuf },
    /// Solve for a truncated quantization and write an artifact.
    Quantize {
        input: PathBuf,
        /// Artifact path; defaults to the input path with `.artifact.json`.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compare the quasitriangular and generic quantizations.
    Compare { input: PathBuf },
    /// Rebuild an artifact from its tables and re-check it.
    VerifyArtifact { artifact: PathBuf },
    /// List shipped examples, or print one as an input document.
    Catalog { name: Option<String> },
}

impl Cli {
    fn tuning(&self) -> Tuning {
        Tuning {
            order: self.order,
            degree_cap: self.degree_cap,
            seed_order: self.seed_order.clone(),
            timestamps: self.timestamps == Toggle::On,
        }
    }
}

/// Runs a parsed command, returning its output without printing.
pub fn execute(cli: &Cli) -> Output {
    let tuning = cli.tuning();
    match &cli.command {
        Command::Check { input } => check(input, &tuning),
        Command::Quantize { input, out } => quantize(input, out.as_deref(), &tuning),
        Command::Compare { input } => compare(input, &tuning),
        Command::VerifyArtifact { artifact } => verify_artifact(artifact, &tuning),
        Command::Catalog { name } => catalog(name.as_deref()),
    }
}

/// Renders an output in the requested format.
pub fn render(output: &Output, format: Format) -> String {
    match (output, format) {
        (Output::Document(doc, _), _) => doc.clone(),
        (Output::Report(r), Format::Json) => r.to_json(),
        (Output::Report(r), Format::Text) => r.to_text(),
    }
}

/// Parses arguments, runs the command, prints its output and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Outcome::Failure.code() } else { 0 };
        }
    };
    let output = execute(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(render(&output, cli.format).as_bytes());
    output.report().exit_code
}
