//! Pulses pinned to the front, center or back of the cycle; only the next
//! switching frequency is chosen, from the table of frequency laws.

use sns_svpwm::modulator::Phase;
use sns_svpwm::rng::SeededRng;
use sns_svpwm::scheduler::{
    synthetic_chain, table2_next_freq, CrossPairing, PulsePosition, Strategy,
};
use sns_svpwm::spectrum::cancellation_residual;

fn main() -> sns_svpwm::Result<()> {
    let fx = 7000.0;
    println!("next frequency for fs_prev = 2500 Hz, D = 0.4 -> 0.6, k = 5:");
    for pairing in [CrossPairing::RiseToNextFall, CrossPairing::FallToNextRise] {
        for position in [
            PulsePosition::Front,
            PulsePosition::Center,
            PulsePosition::Back,
        ] {
            let fs = table2_next_freq(position, pairing, fx, 2500.0, 0.4, 0.6, 5);
            println!(
                "  {:<18} {:<7} {:>9.1} Hz",
                pairing.name(),
                position.name(),
                fs
            );
        }
    }

    println!();
    println!("residual of 1000-cycle chains (bound 2):");
    for pairing in [CrossPairing::RiseToNextFall, CrossPairing::FallToNextRise] {
        for position in [
            PulsePosition::Front,
            PulsePosition::Center,
            PulsePosition::Back,
        ] {
            let s = Strategy::FixedPosition {
                fs_min_hz: 1500.0,
                fs_max_hz: 3500.0,
                fx_hz: fx,
                position,
                pairing,
            };
            let recs = synthetic_chain(&s, 1000, (0.1, 0.9), &mut SeededRng::new(3))?;
            let res = cancellation_residual(&recs, Phase::A, fx);
            println!("  {:<18} {:<7} {res:.4}", pairing.name(), position.name());
        }
    }
    Ok(())
}
