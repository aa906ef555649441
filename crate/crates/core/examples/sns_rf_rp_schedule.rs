//! Random frequency and random position with the 7 kHz null, both coupling
//! variants. Shows how the switching frequency spreads over the band.

use sns_svpwm::modulator::ModulatorConfig;
use sns_svpwm::scheduler::{schedule, SnsRfRpVariant, Strategy};

fn main() -> sns_svpwm::Result<()> {
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0)?;
    for variant in [
        SnsRfRpVariant::PositionFromFrequency,
        SnsRfRpVariant::FrequencyFromPosition,
    ] {
        let strategy = Strategy::SnsRfRp {
            fs_min_hz: 1500.0,
            fs_max_hz: 3500.0,
            fx_hz: 7000.0,
            variant,
        };
        let run = schedule(strategy, &modulator, 2.0, 7)?;
        let mut bins = [0usize; 8];
        for c in &run.cycles {
            let i = ((c.fs() - 1500.0) / 250.0) as usize;
            bins[i.min(7)] += 1;
        }
        println!("{} ({} cycles)", variant.name(), run.cycles.len());
        for (i, n) in bins.iter().enumerate() {
            let lo = 1500 + 250 * i;
            println!("  {lo}-{} Hz {:>5} {}", lo + 250, n, "#".repeat(n / 40));
        }
        println!(
            "  fallbacks {:?}  chain restarts {:?}",
            run.stats.fallbacks, run.stats.chain_restarts
        );
    }
    Ok(())
}
