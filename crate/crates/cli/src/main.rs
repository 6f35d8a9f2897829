//! `orbitcat`: runs scenario documents through the orbit-category Clifford
//! pipeline and its oracles.

mod report;
mod scenario;
mod selftest;
mod tasks;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{Report, ScenarioReport};
use scenario::Invalid;

#[derive(Parser)]
#[command(
    name = "orbitcat",
    version,
    about = "Clifford theory in orbit categories, checked exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a scenario document.
    Run {
        path: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the built-in corpus of scenarios.
    Selftest {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List the builders, actions, module kinds and tasks.
    ListBuilders,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized witness searches.
    #[arg(long)]
    seed: Option<u64>,
    /// Record per-task wall time (the report is then no longer reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn diagnostic(kind: &str, path: Option<&str>, message: &str) -> ExitCode {
    let mut d = json!({"status": "invalid", "kind": kind, "message": message});
    if let Some(p) = path {
        d["path"] = json!(p);
    }
    eprintln!("{d}");
    ExitCode::from(EXIT_INVALID)
}

fn invalid(file: &Path, e: &Invalid) -> ExitCode {
    let mut d = json!({
        "status": "invalid",
        "kind": "validation",
        "file": file.display().to_string(),
        "path": e.path,
        "message": e.message,
    });
    if e.path == "$" {
        d["kind"] = json!("parse");
    }
    eprintln!("{d}");
    ExitCode::from(EXIT_INVALID)
}

fn emit(report: &Report, out: &OutputArgs) -> ExitCode {
    let text = match out.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &out.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                return diagnostic("io", Some(&p.display().to_string()), &e.to_string());
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn seed(out: &OutputArgs) -> u64 {
    let s = out.seed.unwrap_or_else(orbit_clifford::search_seed);
    orbit_clifford::set_search_seed(s);
    s
}

fn run(path: &Path, out: &OutputArgs) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return diagnostic("io", Some(&path.display().to_string()), &e.to_string()),
    };
    let seed = seed(out);
    let built = match scenario::parse(&text).and_then(scenario::build) {
        Ok(b) => b,
        Err(e) => return invalid(path, &e),
    };
    let results = tasks::run_all(&built, out.timing);
    let stem = path
        .file_stem()
        .map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
    let report = Report::new(seed, vec![ScenarioReport::new(&stem, built, results)]);
    emit(&report, out)
}

fn selftest(out: &OutputArgs) -> ExitCode {
    let seed = seed(out);
    let mut reports = Vec::new();
    for (name, text) in selftest::CORPUS {
        let built = match scenario::parse(text).and_then(scenario::build) {
            Ok(b) => b,
            Err(e) => return invalid(Path::new(name), &e),
        };
        let results = tasks::run_all(&built, out.timing);
        reports.push(ScenarioReport::new(name, built, results));
    }
    emit(&Report::new(seed, reports), out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            return diagnostic("usage", None, first);
        }
    };
    match cli.command {
        Command::Run { path, out } => run(&path, &out),
        Command::Selftest { out } => selftest(&out),
        Command::ListBuilders => {
            print!("{}", scenario::builders_text());
            ExitCode::SUCCESS
        }
    }
}
