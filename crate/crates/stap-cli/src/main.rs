//! `stap` — pulse design, time evolution, gate execution, and fidelity
//! sweeps for invariant-based shortcut phase gates, written as CSV with
//! provenance headers.
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime (I/O or
//! numerical-accuracy) error, 3 gate-fidelity threshold violation.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{cmd_evolve, cmd_gate, cmd_pulse, cmd_sweep, figure_preset, Ctx, FigureCommand};
use config::RunConfig;
use error::CliError;

#[derive(Parser)]
#[command(
    name = "stap",
    version,
    about = "Shortcut-passage phase gates in cavity QED: pulses, evolutions, gate reports, sweeps",
    after_help = "Config file schema (key = value, '#' comments):\n  \
        protocol, epsilon, tf_over_g, g, gamma, kappa, n_steps,\n  \
        grid.x.{min,max,count}, grid.y.{min,max,count}, output,\n  \
        model, initial, target, labels, sweep, rows, delta_beta,\n  \
        threshold, exact_epsilon\n\
        Flags override file values; file values override command defaults.\n\
        All frequencies are in units of g, times in units of 1/g."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Key = value config file (see --help for the schema).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output path (default depends on the command).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Omit the timestamp comment so reruns are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
    /// Use phase-matched mixing angles instead of the nominal 0.25 rad.
    #[arg(long)]
    exact_epsilon: bool,
    /// Minimum acceptable gate fidelity (gate command exits 3 below it).
    #[arg(long, value_name = "F")]
    threshold: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a drive-pulse schedule (t, omega1, omega2).
    Pulse(CommonArgs),
    /// Evolve a named model from a named initial state (populations + fidelity).
    Evolve(CommonArgs),
    /// Execute a gate protocol; write its per-state report and realized matrix.
    Gate(CommonArgs),
    /// Run a 2-D fidelity sweep (x, y, fidelity, status).
    Sweep(CommonArgs),
    /// Reproduce a figure dataset with caption-default parameters.
    Figure {
        /// fig2a fig2b fig3a fig3b fig4a fig4b fig4c fig5a fig5b
        id: String,
        #[command(flatten)]
        args: CommonArgs,
    },
}

fn build_ctx(args: &CommonArgs, preset: RunConfig) -> Result<Ctx, CliError> {
    let mut cfg = preset;
    if let Some(path) = &args.config {
        cfg = cfg.overlay(RunConfig::from_file(path)?);
    }
    let mut flags = RunConfig::default();
    if let Some(out) = &args.out {
        flags.output = Some(out.clone());
    }
    if args.exact_epsilon {
        flags.exact_epsilon = Some(true);
    }
    if let Some(t) = args.threshold {
        flags.threshold = Some(t);
    }
    Ok(Ctx { cfg: cfg.overlay(flags), no_timestamp: args.no_timestamp })
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Pulse(args) => cmd_pulse(build_ctx(&args, RunConfig::default())?),
        Command::Evolve(args) => cmd_evolve(build_ctx(&args, RunConfig::default())?),
        Command::Gate(args) => cmd_gate(build_ctx(&args, RunConfig::default())?),
        Command::Sweep(args) => cmd_sweep(build_ctx(&args, RunConfig::default())?),
        Command::Figure { id, args } => {
            let (command, preset, default_out) = figure_preset(&id)?;
            let mut ctx = build_ctx(&args, preset)?;
            if ctx.cfg.output.is_none() {
                ctx.cfg.output = Some(PathBuf::from(default_out));
            }
            match command {
                FigureCommand::Pulse => cmd_pulse(ctx),
                FigureCommand::Evolve => cmd_evolve(ctx),
                FigureCommand::Sweep => cmd_sweep(ctx),
            }
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version print to stdout and succeed; usage errors are
            // configuration errors under the exit-code contract
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("stap: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
