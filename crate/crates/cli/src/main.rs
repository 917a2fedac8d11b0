use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use corecalc_cli::{cmd_fuzz, cmd_run, Exit, FuzzOptions, RunOptions};

#[derive(Parser)]
#[command(name = "corecalc", version, about = "Exact polyhedral convex calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the queries of a problem file and write a JSON report.
    Run {
        problem: PathBuf,
        /// Report path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Cross-check results against the definitional oracles.
        #[arg(long)]
        oracle: bool,
        /// Exit with 3 when a rule query's qualification condition fails.
        #[arg(long)]
        require_qc: bool,
        /// Seed for randomized oracle sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        enable_test_hooks: bool,
    },
    /// Randomized campaign over every rule and characterization.
    Fuzz {
        /// Ambient dimension of the generated sets (1 to 4).
        #[arg(long, default_value_t = 2)]
        dimension: usize,
        /// Instances per check.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest denominator of generated coefficients.
        #[arg(long, default_value_t = 3)]
        max_denominator: i64,
        /// Directory for minimized counterexample files.
        #[arg(long, default_value = "fuzz-counterexamples")]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            problem,
            output,
            oracle,
            require_qc,
            seed,
            enable_test_hooks,
        } => {
            let opts = RunOptions {
                oracle,
                require_qc,
                seed,
                test_hooks: enable_test_hooks,
            };
            cmd_run(&problem, output.as_deref(), &opts)
        }
        Command::Fuzz {
            dimension,
            count,
            seed,
            max_denominator,
            out_dir,
        } => {
            let mut opts = FuzzOptions::new(dimension, count, seed);
            opts.max_denominator = max_denominator;
            opts.out_dir = Some(out_dir);
            cmd_fuzz(&opts).map(|s| {
                print!("{}", s.table());
                s.exit()
            })
        }
    };
    match result {
        Ok(exit) => ExitCode::from(exit.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Exit::InputError.code() as u8)
        }
    }
}
