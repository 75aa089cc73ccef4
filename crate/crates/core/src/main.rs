use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use epiworld::cli::{self, BenchConfig, Domain, Mode, RunConfig};
use epiworld::epistemic::{Semantics, SolveOptions};

#[derive(Parser)]
#[command(name = "epiworld", version, about = "World views of epistemic logic programs")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Print the world views of the input program (the default).
    Solve(SolveArgs),
    /// Time the solver on generated or shipped instances and write CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Number of world views to print, 0 for all.
    #[arg(short = 'n', default_value_t = 1)]
    models: usize,
    #[arg(long, value_enum, default_value_t = SemanticsArg::G91)]
    semantics: SemanticsArg,
    /// Do not add consistency constraints to the guess program.
    #[arg(long)]
    no_constraints: bool,
    /// Do not pre-fix subjective atoms decided by simplification.
    #[arg(long)]
    no_wfm: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Solve)]
    mode: ModeArg,
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    domain: DomainArg,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = SemanticsArg::G91)]
    semantics: SemanticsArg,
    /// Per-run limit in seconds.
    #[arg(long, default_value_t = 120.0)]
    timeout: f64,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Run instances concurrently.
    #[arg(long)]
    parallel: bool,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    G91,
    K15,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Solve,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Eligibility,
    Yale,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::G91 => Semantics::G91,
            SemanticsArg::K15 => Semantics::K15,
        }
    }
}

fn run_solve(args: SolveArgs) -> i32 {
    let config = RunConfig {
        inputs: args.files,
        options: SolveOptions {
            semantics: args.semantics.into(),
            max_models: args.models,
            constraints: !args.no_constraints,
            wfm: !args.no_wfm,
            ..Default::default()
        },
        mode: match args.mode {
            ModeArg::Solve => Mode::Solve,
            ModeArg::Oracle => Mode::Oracle,
        },
    };
    cli::run(&config, &mut io::stdout().lock(), &mut io::stderr().lock())
}

fn run_bench(args: BenchArgs) -> i32 {
    if !(args.timeout.is_finite() && args.timeout >= 0.0) {
        eprintln!("epiworld: --timeout must be a non-negative number of seconds");
        return cli::EXIT_INPUT_ERROR;
    }
    let config = BenchConfig {
        domain: match args.domain {
            DomainArg::Eligibility => Domain::Eligibility,
            DomainArg::Yale => Domain::Yale,
        },
        max_n: args.max_n,
        seed: args.seed,
        semantics: args.semantics.into(),
        timeout: Duration::from_secs_f64(args.timeout),
        reps: args.reps,
        parallel: args.parallel,
    };
    let result = cli::bench(&config).and_then(|records| match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| epiworld::Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            cli::write_csv(&records, BufWriter::new(file))
        }
        None => cli::write_csv(&records, io::stdout().lock()),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("epiworld: {e}");
            cli::EXIT_FAILURE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Some(Command::Solve(args)) => run_solve(args),
        Some(Command::Bench(args)) => run_bench(args),
        None => run_solve(cli.solve),
    };
    ExitCode::from(status as u8)
}
