use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fhopf::replay::{replay, replay_all, CASE_IDS};
use fhopf::scenario::{run, Analysis, Format, Report, RunOptions, Scenario};
use fhopf::Error;

#[derive(Parser)]
#[command(name = "fhopf", version, about = "Exact Hopf actions on filtered AS regular algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: OutputFormat,

    /// Degree bound for invariants and galois, overriding the scenario.
    #[arg(long, global = true)]
    degree: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the (co)module-algebra axioms and faithfulness.
    Check { files: Vec<PathBuf> },
    /// Fixed ring generators up to a degree bound.
    Invariants { files: Vec<PathBuf> },
    /// Homological (co)determinant.
    Hdet { files: Vec<PathBuf> },
    /// Canonical form of a two-generator relation.
    Classify { files: Vec<PathBuf> },
    /// Strongly graded (Galois) check for a diagonal grading.
    Galois { files: Vec<PathBuf> },
    /// Run the analyses listed in each scenario.
    Run { files: Vec<PathBuf> },
    /// Replay registered cases.
    Replay {
        /// Case id, or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        /// List the case ids and exit.
        #[arg(long)]
        list: bool,
    },
}

fn load(path: &PathBuf) -> Result<Scenario, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Scenario::parse(&src).map_err(|e| match e {
        Error::Parse { line, column, message } => format!("{}:{line}:{column}: {message}", path.display()),
        other => format!("{}: {other}", path.display()),
    })
}

/// Restricts a scenario to one analysis, keeping only the expectations it can answer.
fn only(mut sc: Scenario, a: Analysis) -> Scenario {
    let keep = sc
        .analyses
        .iter()
        .find(|x| std::mem::discriminant(*x) == std::mem::discriminant(&a))
        .copied()
        .unwrap_or(a);
    let prefix = match a {
        Analysis::Verify => "verify.",
        Analysis::Invariants(_) => "invariants.",
        Analysis::Hdet => "hdet.",
        Analysis::Classify => "classify.",
        Analysis::Galois(_) => "galois.",
    };
    sc.expect.retain(|k, _| k.starts_with(prefix));
    sc.analyses = vec![keep];
    sc
}

fn emit(report: &Report, format: Format) -> bool {
    print!("{}", report.render(format));
    report.passed()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Kv => Format::Kv,
    };
    let opts = RunOptions { degree: cli.degree };
    let (files, analysis) = match cli.command {
        Command::Replay { case, list } => {
            if list {
                for id in CASE_IDS {
                    println!("{id}");
                }
                return ExitCode::SUCCESS;
            }
            let report = if case == "all" {
                replay_all()
            } else {
                match replay(&case) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            return if emit(&report, format) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
        Command::Check { files } => (files, Some(Analysis::Verify)),
        Command::Invariants { files } => (files, Some(Analysis::Invariants(None))),
        Command::Hdet { files } => (files, Some(Analysis::Hdet)),
        Command::Classify { files } => (files, Some(Analysis::Classify)),
        Command::Galois { files } => (files, Some(Analysis::Galois(None))),
        Command::Run { files } => (files, None),
    };
    if files.is_empty() {
        eprintln!("error: no scenario files given");
        return ExitCode::from(2);
    }
    let mut all_pass = true;
    for (i, path) in files.iter().enumerate() {
        let sc = match load(path) {
            Ok(sc) => sc,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        };
        let sc = match analysis {
            Some(a) => only(sc, a),
            None => sc,
        };
        if i > 0 {
            println!();
        }
        match run(&sc, opts) {
            Ok(report) => all_pass &= emit(&report, format),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
