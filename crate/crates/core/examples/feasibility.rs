//! Fallback rate of the fixed-frequency chain as the modulation index rises.

use sns_svpwm::modulator::ModulatorConfig;
use sns_svpwm::scheduler::{feasibility_min_fx, schedule, CrossPairing, Strategy};

fn main() -> sns_svpwm::Result<()> {
    for pairing in [CrossPairing::RiseToNextFall, CrossPairing::FallToNextRise] {
        println!(
            "{} (fx must exceed {:.0} Hz at fs = 2500 Hz, full duty)",
            pairing.name(),
            feasibility_min_fx(pairing, 2500.0, 0.0, 1.0)
        );
        for m in [0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 1.0] {
            let modulator = ModulatorConfig::new(m, 50.0, 24.0)?;
            let s = Strategy::SnsRp {
                fs_hz: 2500.0,
                fx_hz: 7000.0,
                pairing,
            };
            let run = schedule(s, &modulator, 1.0, 1)?;
            println!(
                "  M = {m:.2}: {:>7.1} fallbacks/s",
                run.stats.total_fallbacks() as f64 / run.end_time()
            );
        }
    }
    Ok(())
}
