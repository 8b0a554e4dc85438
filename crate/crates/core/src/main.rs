use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cyclift::config::Run;
use cyclift::report::{self, RunError};

#[derive(Parser)]
#[command(name = "cyclift", version, about = "Cyclic covers of projective space and their W2 liftings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclic cover analyses.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Liftings over W_2(F_q).
    #[command(subcommand)]
    Lift(LiftCmd),
    /// Witt vector arithmetic.
    #[command(subcommand)]
    Witt(WittCmd),
    /// Finite field data.
    #[command(subcommand)]
    Field(FieldCmd),
}

#[derive(Args)]
struct Common {
    /// Run configuration file.
    config: PathBuf,
    /// Also write the JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Hypotheses, component count, factorization and canonical degree.
    Analyze(Common),
    /// Compare the cover of a prime divisor with the restricted cover.
    Restrict {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: String,
    },
}

#[derive(Subcommand)]
enum LiftCmd {
    /// Test a given lifting of a target for divisibility.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: String,
        /// Lifted target equation, e.g. `y - p*(z)`.
        #[arg(long)]
        lift: String,
    },
    /// Search for a divisible lifting of a target.
    Search {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: String,
    },
    /// Search every configured target.
    Probe(Common),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Defining polynomial coefficients, constant term first.
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WittCmd {
    /// Evaluate an expression in W_2(F_q); `(c0; c1)` is a Witt vector.
    Eval {
        expr: String,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus and generator of F_q.
    Info(FieldArgs),
}

fn seed() -> Result<u64, RunError> {
    match std::env::var("CYCLIFT_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| RunError::Config(format!("CYCLIFT_SEED must be an integer, got `{s}`"))),
        Err(_) => Ok(0),
    }
}

fn load(path: &Path, seed: u64) -> Result<(Run, Option<PathBuf>), RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
    let run = report::load(&text, seed).map_err(|e| match e {
        RunError::Config(m) => RunError::Config(format!("{}: {m}", path.display())),
        other => other,
    })?;
    let output = cyclift::config::RunConfig::parse(&text)
        .ok()
        .and_then(|c| c.output().map(|o| path.parent().unwrap_or(Path::new(".")).join(o)));
    Ok((run, output))
}

fn emit<T: Serialize>(report: &T, json: Option<&Path>) -> Result<(), RunError> {
    let text = report::to_json(report);
    if let Some(path) = json {
        std::fs::write(path, format!("{text}\n")).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
    }
    println!("{text}");
    Ok(())
}

fn with_config<T: Serialize>(common: &Common, f: impl FnOnce(&Run, u64) -> Result<T, RunError>) -> Result<(), RunError> {
    let seed = seed()?;
    let (run, output) = load(&common.config, seed)?;
    let report = f(&run, seed)?;
    emit(&report, common.json.as_deref().or(output.as_deref()))
}

fn dispatch(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Cover(CoverCmd::Analyze(c)) => with_config(&c, report::run_analyze),
        Command::Cover(CoverCmd::Restrict { common, target }) => {
            with_config(&common, |r, s| report::run_restrict(r, &target, s))
        }
        Command::Lift(LiftCmd::Check { common, target, lift }) => {
            with_config(&common, |r, _| report::run_lift_check(r, &target, &lift))
        }
        Command::Lift(LiftCmd::Search { common, target }) => with_config(&common, |r, _| report::run_lift_search(r, &target)),
        Command::Lift(LiftCmd::Probe(c)) => with_config(&c, report::run_probe),
        Command::Witt(WittCmd::Eval { expr, field }) => {
            let r = report::run_witt_eval(&expr, field.p, field.n, field.modulus.as_deref())?;
            emit(&r, field.json.as_deref())
        }
        Command::Field(FieldCmd::Info(field)) => {
            let r = report::run_field_info(field.p, field.n, field.modulus.as_deref())?;
            emit(&r, field.json.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
