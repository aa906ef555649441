use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sns_svpwm::scenario::{run_compare, run_flatness, run_simulate, BaselineKind, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "sns-svpwm",
    version,
    about = "SVPWM pulse scheduling with selective noise suppression"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML file of run parameters; defaults apply to missing keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides output_dir)
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed (overrides seed)
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write cycles, waveform, psd, current and report files
    Simulate(Common),
    /// Compare the configured strategy with a baseline on a shared PSD grid
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "rp")]
        baseline: BaselineKind,
    },
    /// PSD flatness around the first four switching-frequency multiples
    Flatness(Common),
}

fn load(common: &Common) -> sns_svpwm::Result<(ScenarioConfig, PathBuf)> {
    let mut cfg = match &common.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    let out = common.out.clone().unwrap_or_else(|| cfg.output_dir.clone());
    Ok((cfg, out))
}

fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn run(cli: Cli) -> sns_svpwm::Result<()> {
    match cli.command {
        Command::Simulate(common) => {
            let (cfg, out) = load(&common)?;
            let outcome = run_simulate(&cfg, &out)?;
            warn(&outcome.warnings);
            println!("{}", outcome.report);
        }
        Command::Compare { common, baseline } => {
            let (cfg, out) = load(&common)?;
            let outcome = run_compare(&cfg, baseline, &out)?;
            warn(&outcome.warnings);
            println!("{}", outcome.report);
        }
        Command::Flatness(common) => {
            let (cfg, out) = load(&common)?;
            let (rows, warnings) = run_flatness(&cfg, &out)?;
            warn(&warnings);
            for f in rows {
                println!(
                    "center_hz = {} std_db = {:.3} peak_to_mean_db = {:.3}",
                    f.center_hz, f.std_db, f.peak_to_mean_db
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
