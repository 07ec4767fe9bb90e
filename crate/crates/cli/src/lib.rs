//! Batch front-end: reads a JSON problem document, runs one command and
//! produces a JSON report plus a plain-text table.

pub mod commands;
pub mod document;
pub mod report;

use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use mfcat_core::Error;
use sha2::{Digest, Sha256};

use document::{Context, ProblemDocument};
use report::{Diagnostic, Report};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Verify,
    Suspend,
    Twist,
    Cone,
    Sum,
    Dual,
    Tensor,
    Koszul,
    Knorrer,
    Coker,
    Ext,
    Nullhomotopy,
    Annihilation,
    Jacobi,
    Milnor,
    Segal,
    Degenerate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Suspend => "suspend",
            Command::Twist => "twist",
            Command::Cone => "cone",
            Command::Sum => "sum",
            Command::Dual => "dual",
            Command::Tensor => "tensor",
            Command::Koszul => "koszul",
            Command::Knorrer => "knorrer",
            Command::Coker => "coker",
            Command::Ext => "ext",
            Command::Nullhomotopy => "nullhomotopy",
            Command::Annihilation => "annihilation",
            Command::Jacobi => "jacobi",
            Command::Milnor => "milnor",
            Command::Segal => "segal",
            Command::Degenerate => "degenerate",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub window: Option<(i64, i64)>,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Debug)]
pub enum CliError {
    /// The document does not match the schema or names something missing.
    Schema(String),
    /// An error from the library, with the document path it came from.
    Core { at: String, error: Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Core { error, .. } if is_input_error(error) => 2,
            CliError::Core { .. } => 1,
        }
    }

    pub fn location(&self) -> Option<&str> {
        match self {
            CliError::Schema(_) => None,
            CliError::Core { at, .. } => Some(at),
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Schema(_) => "SchemaError".into(),
            CliError::Core { error, .. } => {
                let dbg = format!("{error:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Core { at, error } => write!(f, "{at}: {error}"),
        }
    }
}

/// Bad input as opposed to a mathematical failure on well-formed input.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownVariable { .. }
            | Error::Syntax { .. }
            | Error::NegativeExponent { .. }
            | Error::RingMismatch
            | Error::InvalidRing(_)
            | Error::NoSlicingChannel
            | Error::InhomogeneousInput(_)
            | Error::ShapeMismatch(_)
    )
}

/// `LO..HI` or `LO..=HI`, both inclusive.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}..{hi}"));
    }
    Ok((lo, hi))
}

pub fn input_hash(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

pub struct Outcome {
    pub report: Report,
    pub human: String,
    pub exit_code: u8,
}

pub fn parse_document(input: &[u8]) -> Result<ProblemDocument, CliError> {
    serde_json::from_slice(input).map_err(|e| CliError::Schema(e.to_string()))
}

/// Runs `command` on the document in `input`.
pub fn run(command: Command, input: &[u8], flags: &Flags) -> Outcome {
    let start = Instant::now();
    let result = parse_document(input)
        .and_then(|doc| {
            if let Some(n) = &doc.command.name {
                if n != command.name() {
                    return Err(CliError::Schema(format!(
                        "document is for command `{n}`, invoked as `{}`",
                        command.name()
                    )));
                }
            }
            Context::new(doc)
        })
        .and_then(|ctx| commands::dispatch(command, &ctx, flags));
    let timing_ms = flags.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut report = Report {
        command: command.name().into(),
        input_hash: Some(input_hash(input)),
        result: serde_json::Value::Null,
        diagnostics: Vec::new(),
        timing_ms,
    };
    match result {
        Ok(out) => {
            report.result = out.result;
            report.diagnostics = out.diagnostics;
            Outcome {
                report,
                human: out.human,
                exit_code: if out.failed { 1 } else { 0 },
            }
        }
        Err(e) => {
            report.diagnostics.push(Diagnostic::error(e.location(), e.kind(), e.to_string()));
            Outcome {
                report,
                human: format!("error: {e}\n"),
                exit_code: e.exit_code(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-3..3"), Ok((-3, 3)));
        assert_eq!(parse_window("0..=2"), Ok((0, 2)));
        assert_eq!(parse_window("4..4"), Ok((4, 4)));
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("3").is_err());
        assert!(parse_window("a..1").is_err());
    }

    #[test]
    fn exit_codes_by_error() {
        let core = |error| CliError::Core { at: "x".into(), error };
        assert_eq!(CliError::Schema("s".into()).exit_code(), 2);
        assert_eq!(core(Error::NoSlicingChannel).exit_code(), 2);
        assert_eq!(core(Error::UnknownVariable { name: "q".into() }).exit_code(), 2);
        assert_eq!(core(Error::NotClosed).exit_code(), 1);
        assert_eq!(core(Error::NotClosed).kind(), "NotClosed");
        assert_eq!(core(Error::Syntax { pos: 0, msg: String::new() }).kind(), "Syntax");
    }

    #[test]
    fn command_names_match_clap() {
        for c in Command::value_variants() {
            let v = c.to_possible_value().unwrap();
            assert_eq!(v.get_name(), c.name());
        }
        assert_eq!(Command::value_variants().len(), 17);
    }
}
