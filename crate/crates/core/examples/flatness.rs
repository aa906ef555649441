//! Spectral flatness around the first four switching-frequency multiples for
//! every strategy.

use sns_svpwm::scenario::{analyze, flatness_profile, ScenarioConfig, StrategyKind};

fn main() -> sns_svpwm::Result<()> {
    let kinds = [
        StrategyKind::Csvpwm,
        StrategyKind::Rp,
        StrategyKind::Rf,
        StrategyKind::SnsRp,
        StrategyKind::SnsRfRp,
    ];
    println!("peak-to-mean (dB) in +-200 Hz windows");
    println!(
        "{:<10} {:>8} {:>8} {:>8} {:>8}",
        "strategy", 2500, 5000, 7500, 10000
    );
    for kind in kinds {
        let cfg = ScenarioConfig {
            strategy: kind,
            ..ScenarioConfig::default()
        };
        let a = analyze(&cfg)?;
        let rows = flatness_profile(&a.psd, cfg.fs_hz);
        print!("{:<10}", a.run.spec.strategy.name());
        for f in rows {
            print!(" {:>8.2}", f.peak_to_mean_db);
        }
        println!();
    }
    Ok(())
}
