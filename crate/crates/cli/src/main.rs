use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use skewinfo_cli::{
    cmd_info, cmd_sample, cmd_scan, cmd_tau, cmd_verify, Exit, Relation, SampleArgs, SweepParam,
    SweepSpec,
};

#[derive(Parser)]
#[command(name = "skewinfo", version, about = "Skew-information uncertainty of quantum channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Product,
    Sum,
    Triple,
    Pauli,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Theta,
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// Print I, J, V, C, Q and invariant checks for every channel.
    Info {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check one uncertainty relation on the problem's state.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        relation: RelationArg,
        /// Constant of the triple relation (default 1).
        #[arg(long)]
        tau: Option<f64>,
    },
    /// Sweep θ or q and write Q1, Q2 and both lower bounds as CSV.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long)]
        points: usize,
        /// The other parameter (q = 0.5 for θ sweeps, θ = π/4 for q sweeps).
        #[arg(long, allow_hyphen_values = true)]
        fixed: Option<f64>,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a randomized campaign for a named property.
    Sample {
        property: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        kraus: usize,
        /// Rank of sampled states (default: full rank).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Estimate the tightening constant of a three-channel problem.
    Tau {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> skewinfo_cli::CliResult<Exit> {
    match cli.command {
        Command::Info { input } => cmd_info(&input, out),
        Command::Verify {
            input,
            relation,
            tau,
        } => {
            let relation = match relation {
                RelationArg::Product => Relation::Product,
                RelationArg::Sum => Relation::Sum,
                RelationArg::Triple => Relation::Triple,
                RelationArg::Pauli => Relation::Pauli,
            };
            cmd_verify(&input, relation, tau, out)
        }
        Command::Scan {
            input,
            param,
            start,
            stop,
            points,
            fixed,
            output,
        } => {
            let sweep = SweepSpec {
                param: match param {
                    ParamArg::Theta => SweepParam::Theta,
                    ParamArg::Q => SweepParam::Q,
                },
                start,
                stop,
                points,
                fixed,
            };
            cmd_scan(&input, &sweep, output.as_ref(), out)
        }
        Command::Sample {
            property,
            dim,
            kraus,
            rank,
            trials,
            seed,
        } => cmd_sample(
            &SampleArgs {
                property,
                dim,
                kraus,
                rank,
                trials,
                seed,
            },
            out,
        ),
        Command::Tau { input, grid, seed } => cmd_tau(&input, grid, seed, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Parse.code() } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let status = match run(cli, &mut out) {
        Ok(exit) => exit,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit
        }
    };
    let _ = out.flush();
    ExitCode::from(status.code())
}
