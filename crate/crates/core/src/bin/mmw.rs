use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use mmw_core::io::{parse_problem, parse_vector, ProblemInput, Source};
use mmw_core::report::{run, Command, RunOptions};
use mmw_core::{Error, DEFAULT_CELL_BUDGET};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Evaluate A (x)_omega x for the vector given by -x
    Apply,
    /// Principal order matrix, frequencies and the classical principal solution
    Principal,
    /// Solution-index candidates and the ones that verify
    Candidates,
    /// Fully active solutions, relaxation boxes, exact set and cross-check
    Solve,
    /// Exact solution set by cell enumeration
    Exact,
    /// Size class of the solution set
    Classify,
    /// Whether the vector given by -x solves the system
    Check,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Apply => Command::Apply,
            Cmd::Principal => Command::Principal,
            Cmd::Candidates => Command::Candidates,
            Cmd::Solve => Command::Solve,
            Cmd::Exact => Command::Exact,
            Cmd::Classify => Command::Classify,
            Cmd::Check => Command::Check,
        }
    }
}

/// Exact solver for maxmin-omega linear systems.
#[derive(Debug, Parser)]
#[command(name = "mmw", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,

    /// Matrix file: one row per line, `#` comments.
    #[arg(short = 'A', value_name = "FILE")]
    matrix: PathBuf,

    /// Right-hand side file (defaults to the zero vector).
    #[arg(short = 'b', value_name = "FILE", conflicts_with = "rhs")]
    rhs_file: Option<PathBuf>,

    /// Right-hand side given inline, e.g. "1 -2 1/2".
    #[arg(long, value_name = "VALUES", allow_hyphen_values = true)]
    rhs: Option<String>,

    /// Omega as "p/q" or a decimal in (0, 1].
    #[arg(long, required_unless_present = "level")]
    omega: Option<String>,

    /// Level p = ceil(omega n) directly.
    #[arg(long)]
    level: Option<usize>,

    /// Vector for apply and check, e.g. "-4 -2 -1".
    #[arg(short = 'x', value_name = "VALUES", allow_hyphen_values = true)]
    x: Option<String>,

    /// Write the JSON report here; `-` writes it to stdout instead of the summary.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,

    /// Maximum number of arrangement cells to enumerate.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    cell_budget: u128,

    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

fn execute(cli: &Cli) -> Result<i32, Error> {
    let input = ProblemInput {
        matrix: Some(Source::read(&cli.matrix)?),
        rhs: match (&cli.rhs_file, &cli.rhs) {
            (Some(path), _) => Some(Source::read(path)?),
            (None, Some(text)) => Some(Source::new("--rhs", text.clone())),
            (None, None) => None,
        },
        omega: cli.omega.clone(),
        level: cli.level,
    };
    let instance = parse_problem(&input)?;
    let command = Command::from(cli.command);
    let x = match &cli.x {
        Some(text) => Some(parse_vector(&Source::new("-x", text.clone()), instance.matrix.cols())?),
        None if command.needs_vector() => {
            return Err(Error::Domain(format!("{} needs a vector given with -x", command.name())))
        }
        None => None,
    };
    let opts = RunOptions { cell_budget: cli.cell_budget, x, timing: cli.timing };
    let report = run(command, &instance, &opts)?;
    let out = match cli.json.as_deref() {
        Some(path) if path.as_os_str() == "-" => report.to_json() + "\n",
        Some(path) => {
            fs::write(path, report.to_json() + "\n")
                .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
            report.summary()
        }
        None => report.summary(),
    };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("mmw: {e}");
            ExitCode::from(2)
        }
    }
}
