//! The 7 kHz notch of both SNS strategies against a random-position run with
//! the same parameters and seed. Writes psd.csv and report.txt per strategy
//! under the directory given as the first argument (default `notch-out`).

use std::path::PathBuf;

use sns_svpwm::scenario::{run_compare, BaselineKind, ScenarioConfig, StrategyKind};

fn main() -> sns_svpwm::Result<()> {
    let root = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "notch-out".into()),
    );
    for (kind, dir) in [
        (StrategyKind::SnsRp, "sns_rp"),
        (StrategyKind::SnsRfRp, "sns_rf_rp"),
    ] {
        let cfg = ScenarioConfig {
            strategy: kind,
            ..ScenarioConfig::default()
        };
        let out = run_compare(&cfg, BaselineKind::Rp, &root.join(dir))?;
        println!("[{dir}]");
        println!("{}", out.report);
        println!();
    }
    println!("written under {}", root.display());
    Ok(())
}
