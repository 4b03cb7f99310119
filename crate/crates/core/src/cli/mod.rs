//! Command-line front end: parses arguments, runs one computation and writes
//! a JSON report (`"schema": 1`) or a plain-text table.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! cannot be completed, 2 on usage or parse errors.

mod commands;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::lie::{FormFunctional, Mode};

pub use verify::{run_suite, CheckLine, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "hodgelie",
    version,
    about = "Exact cyclic homology, current Lie algebra homology and q-character identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Compute slices even when the truncation cannot certify them.
    #[arg(long, global = true)]
    pub lax: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cyclic homology HC_n^(i) of an algebra, per weight.
    Hc(HcArgs),
    /// Chevalley-Eilenberg homology of g ⊗ A in one weight.
    Ce(CeArgs),
    /// Closedness and exactness of an invariant-polynomial cocycle.
    Cocycle(CocycleArgs),
    /// Exactness of the cup square of an invariant-polynomial cocycle.
    Cup(CocycleArgs),
    /// The loop-group character in its four forms.
    Char(CharArgs),
    /// Ramanujan's bilateral summation on the two standard substitutions.
    Ramanujan(RamanujanArgs),
    /// Euler characteristics of relative complexes against the character series.
    Crosscheck(CrosscheckArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct HcArgs {
    #[arg(long)]
    pub algebra: String,
    #[arg(long, default_value_t = 3)]
    pub i_max: i64,
    /// Defaults to `2 * i_max + 1`.
    #[arg(long)]
    pub n_max: Option<i64>,
    /// Weight bound of the free resolution used for non-free algebras.
    #[arg(long, default_value_t = 8)]
    pub window: i64,
    /// Largest weight per coordinate; defaults to the algebra's window.
    #[arg(long, value_delimiter = ',')]
    pub weight_max: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct CeArgs {
    /// `sl<n>` or `gl<n>`.
    #[arg(long, default_value = "sl2")]
    pub lie: String,
    #[arg(long)]
    pub algebra: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Relative)]
    pub mode: ModeArg,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weight: Vec<i64>,
    #[arg(long, default_value_t = 0)]
    pub k_min: i64,
    #[arg(long, default_value_t = 6)]
    pub k_max: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Relative,
    Absolute,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Relative => Mode::Relative,
            ModeArg::Absolute => Mode::Absolute,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionalArg {
    Evaluation,
    Residue,
    Curl,
}

impl From<FunctionalArg> for FormFunctional {
    fn from(f: FunctionalArg) -> Self {
        match f {
            FunctionalArg::Evaluation => FormFunctional::Evaluation,
            FunctionalArg::Residue => FormFunctional::Residue,
            FunctionalArg::Curl => FormFunctional::CurlAtOrigin,
        }
    }
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    #[arg(long, default_value = "sl2")]
    pub lie: String,
    #[arg(long)]
    pub algebra: String,
    /// Invariant polynomial `Tr(M^{i+1})`.
    #[arg(long, default_value_t = 1)]
    pub i: usize,
    /// Number of Lie arguments minus one.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = FunctionalArg::Curl)]
    pub functional: FunctionalArg,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weight: Vec<i64>,
    /// Look for an exact cycle detecting the class, using generators of
    /// weight at most `SOURCE` and boundaries up to `TARGET` (absolute values).
    #[arg(long, value_delimiter = ',', value_name = "SOURCE,TARGET")]
    pub certificate: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct CharArgs {
    #[arg(long = "nq", default_value_t = 6)]
    pub n_q: i64,
    #[arg(long = "nt", default_value_t = 6)]
    pub n_t: i64,
    #[arg(long, value_enum, default_value_t = CharCheck::All)]
    pub check: CharCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharCheck {
    All,
    None,
}

#[derive(Debug, Args)]
pub struct RamanujanArgs {
    #[arg(long = "nq", default_value_t = 8)]
    pub n_q: i64,
    /// Defaults to `nq`.
    #[arg(long = "nt")]
    pub n_t: Option<i64>,
    /// Cutoff of the bilateral sum; searched upwards from 0 if omitted.
    #[arg(long)]
    pub n_max: Option<i64>,
    #[arg(long, value_enum, default_value_t = RamanujanCase::All)]
    pub case: RamanujanCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RamanujanCase {
    Binomial,
    Bilateral,
    All,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long, default_value_t = 3)]
    pub w_max: i64,
    #[arg(long, default_value_t = 3)]
    pub p_max: i64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
}

/// Result of one command before formatting.
pub struct Outcome {
    pub command: &'static str,
    pub report: Value,
    pub table: String,
    pub passed: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) | Error::RelativeUnavailable(_) | Error::NotFree(_) => 2,
        _ => 1,
    }
}

fn dispatch(cli: &Cli) -> crate::Result<Outcome> {
    let strict = !cli.lax;
    match &cli.command {
        Command::Hc(a) => commands::hc(a, strict),
        Command::Ce(a) => commands::ce(a, strict),
        Command::Cocycle(a) => commands::cocycle(a, false),
        Command::Cup(a) => commands::cocycle(a, true),
        Command::Char(a) => commands::character(a),
        Command::Ramanujan(a) => commands::ramanujan(a),
        Command::Crosscheck(a) => commands::crosscheck(a),
        Command::Verify(a) => Ok(verify::outcome(a.suite)),
    }
}

fn render(cli: &Cli, out: &Outcome) -> String {
    match cli.format {
        Format::Json => {
            let doc = json!({ "schema": 1, "command": out.command, "passed": out.passed, "report": out.report });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => out.table.clone(),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &render(&cli, &out)) {
                eprintln!("error: {e}");
                return 1;
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
