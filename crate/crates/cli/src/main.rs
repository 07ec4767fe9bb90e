use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mfcat::report::{Diagnostic, Report};
use mfcat::{parse_window, run, Command, Flags, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "mfcat", version, about = "Exact computations with graded matrix factorizations")]
struct Cli {
    #[arg(value_enum, value_name = "SUBCOMMAND")]
    command: Command,
    /// Problem document (JSON).
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Slicing-degree window, inclusive, e.g. `-3..3`.
    #[arg(long, value_name = "LO..HI", value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let flags = Flags {
        window: cli.window,
        seed: cli.seed,
        timing: cli.timing,
    };
    let (report, human, code) = match std::fs::read(&cli.input) {
        Ok(bytes) => {
            let out = run(cli.command, &bytes, &flags);
            (out.report, out.human, out.exit_code)
        }
        Err(e) => {
            let msg = format!("cannot read {}: {e}", cli.input.display());
            let report = Report {
                command: cli.command.name().into(),
                input_hash: None,
                result: serde_json::Value::Null,
                diagnostics: vec![Diagnostic::error(None, "IoError", msg.clone())],
                timing_ms: None,
            };
            (report, format!("error: {msg}\n"), 2)
        }
    };
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if code == 0 || code == 1 && !report.result.is_null() {
        if !to_stdout {
            print!("{human}");
        }
    } else {
        eprint!("{human}");
    }
    for d in report.diagnostics.iter().filter(|d| d.kind.is_some() && code != 2) {
        if let Some(loc) = &d.location {
            eprintln!("{loc}: {}", d.message);
        }
    }
    match &cli.json {
        Some(_) if to_stdout => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => {}
    }
    ExitCode::from(code)
}
