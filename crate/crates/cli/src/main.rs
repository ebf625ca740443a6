use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qc_arrival_cli::config::{self, RawConfig, Scenario};
use qc_arrival_cli::{scenarios, Result};

#[derive(Parser)]
#[command(
    name = "qc-arrival",
    version,
    about = "Quantum and classical arrival times through a rectangular barrier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// |T|, eta, eta', eta'' at k0 and k0 ± pi/4sigma0 versus mass.
    Fig1(Common),
    /// Densities at t0 and detector currents for each method, per mass.
    Fig23(Common),
    /// tau_Q, tau_C and their difference over mass × alpha.
    Fig4(Common),
    /// One-body density and detector current for two identical particles.
    Fig5(Common),
    /// Mean arrival times and spreads per mass.
    Arrival(Common),
    /// Full mass × alpha table of arrival statistics.
    Sweep(Common),
    /// Resolve the configuration and print it as JSON.
    Validate(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration file; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding [output] directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(cli: Cli) -> Result<()> {
    let (scenario, common) = match cli.command {
        Command::Fig1(c) => (Scenario::Fig1, c),
        Command::Fig23(c) => (Scenario::Fig23, c),
        Command::Fig4(c) => (Scenario::Fig4, c),
        Command::Fig5(c) => (Scenario::Fig5, c),
        Command::Arrival(c) => (Scenario::Arrival, c),
        Command::Sweep(c) => (Scenario::Sweep, c),
        Command::Validate(c) => (Scenario::Validate, c),
    };
    let raw = match &common.config {
        Some(path) => config::load(path)?,
        None => RawConfig::default(),
    };
    let mut cfg = raw.resolve(scenario)?;
    if let Some(out) = common.out {
        cfg.output.directory = out;
    }
    if scenario == Scenario::Validate {
        println!("{}", cfg.to_json());
        return Ok(());
    }
    for path in scenarios::run(&cfg)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
