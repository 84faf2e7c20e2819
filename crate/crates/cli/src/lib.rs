//! Command implementations behind the `yangian` binary.
//!
//! Every command prints one JSON document on stdout. Exit codes:
//! 0 ok, 2 usage, 3 non-generic β, 4 relation violation, 5 bad parameters,
//! 6 classification failure.

mod commands;
mod label;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use yangian_core::module::{ModuleError, Window};
use yangian_core::poly::Scalar;
use yangian_core::quiver::QuiverError;

pub use label::parse_label;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_GENERIC: i32 = 3;
pub const EXIT_RELATION: i32 = 4;
pub const EXIT_BAD_PARAMS: i32 = 5;
pub const EXIT_CLASSIFICATION: i32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotGeneric(String),
    #[error("{0}")]
    Relation(String),
    #[error("{0}")]
    BadParams(String),
    #[error("{0}")]
    Classification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::NotGeneric(_) => EXIT_NOT_GENERIC,
            CliError::Relation(_) => EXIT_RELATION,
            CliError::BadParams(_) => EXIT_BAD_PARAMS,
            CliError::Classification(_) => EXIT_CLASSIFICATION,
        }
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::NotGeneric(..) => CliError::NotGeneric(e.to_string()),
            ModuleError::DivisibilityViolation { .. } => CliError::Relation(e.to_string()),
            _ => CliError::BadParams(e.to_string()),
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        match e {
            QuiverError::Module(m) => m.into(),
            QuiverError::NotIndecomposable => CliError::Classification(e.to_string()),
            _ => CliError::BadParams(e.to_string()),
        }
    }
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.trim().parse::<Scalar>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "yangian",
    version,
    about = "Yangian Y_p(gl_2): PBW algebra, weight modules, blocks and quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ParamArgs {
    /// Level; must match the number of β entries when given.
    #[arg(long)]
    pub p: Option<u32>,
    /// Comma-separated rationals, e.g. `1/2,0`.
    #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<Scalar>,
    /// Comma-separated rationals, 2p of them.
    #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Vec<Scalar>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the quantum determinant, with agreement and centrality flags.
    Qdet {
        #[arg(long)]
        p: u32,
    },
    /// Centrality of the quantum-determinant coefficients, or of a product of generators.
    CentralCheck {
        #[arg(long)]
        p: u32,
        /// Space- or comma-separated generators, e.g. `t21^(1) t12^(1)`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Normal form of a product of generators, or a straightening certificate.
    Straighten {
        #[arg(long)]
        p: u32,
        #[arg(long, conflicts_with = "x")]
        word: Option<String>,
        /// Generator `x` for the certificate `Σ z^l x a_l = 0`.
        #[arg(long)]
        x: Option<String>,
        /// Level `i` of `z = t22^(i)`.
        #[arg(long, requires = "x")]
        z: Option<u32>,
    },
    /// Builds the universal module (or a Verma module) on a window and verifies it.
    Module {
        #[command(flatten)]
        params: ParamArgs,
        /// Roots of α; builds the Verma module V(α, β) instead.
        #[arg(long, value_parser = parse_scalar, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Option<Vec<Scalar>>,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 2)]
        margin: i64,
        /// Writes the module JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-verifies an existing module file instead of building one.
        #[arg(long, conflicts_with_all = ["alpha", "window"])]
        check: Option<PathBuf>,
    },
    /// Integral offsets, representation type, support box and dim L(ℓ).
    #[command(visible_aliases = ["rep-type", "support"])]
    Analyze {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Skeleton of the block and the skeleton representation of M(ℓ) on a window.
    Skeleton {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Constructs classified indecomposables; several labels give their direct sum.
    Indecomposables {
        /// Label as JSON (`{"class":"B_Band","d":2,"lambda":"5/7","variant":1}`)
        /// or shorthand (`B_Band(2,5/7,1)`, `TypeA(3;1,3;10)`, `S(0)`, `S(2;1)`).
        #[arg(long = "family", alias = "label", required = true)]
        families: Vec<String>,
        /// Applies a random change of basis at every vertex.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identifies the isoclass of an indecomposable representation file.
    Identify {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Splits a representation file into indecomposable summands.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Directory receiving `summand_<n>.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub(crate) fn parse_window(text: Option<&str>, p: usize) -> Result<Window, CliError> {
    match text {
        None => Ok(Window::cube(p, 4)),
        Some(s) => Window::parse(s).map_err(|e| CliError::Usage(format!("--window: {e}"))),
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match commands::execute(cli.command) {
        Ok(value) => Outcome {
            code: EXIT_OK,
            stdout: render(&value),
            stderr: String::new(),
        },
        Err((e, value)) => Outcome {
            code: e.exit_code(),
            stdout: value.as_ref().map(render).unwrap_or_default(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub(crate) fn render(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}
