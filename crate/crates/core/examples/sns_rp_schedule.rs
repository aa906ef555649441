//! Fixed-frequency random-position schedule that nulls 7 kHz.
//!
//! Prints the first cycles of phase A with the drawn `k`, the angle error of
//! each paired edge at fx, and compares the cancellation residual with a
//! plain random-position schedule.

use sns_svpwm::modulator::{ModulatorConfig, Phase};
use sns_svpwm::scheduler::{schedule, CrossPairing, Strategy};
use sns_svpwm::spectrum::cancellation_residual;

fn main() -> sns_svpwm::Result<()> {
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0)?;
    let fx = 7000.0;
    let pairing = CrossPairing::RiseToNextFall;
    let sns = schedule(
        Strategy::SnsRp {
            fs_hz: 2500.0,
            fx_hz: fx,
            pairing,
        },
        &modulator,
        0.02,
        42,
    )?;

    println!("  m    d_a     r_a     k   pair error (rad)");
    for w in sns.cycles.windows(2).take(12) {
        let c = &w[1];
        println!(
            "{:>3}  {:.4}  {:.4}  {:>2}   {:+.2e}",
            c.m,
            c.duty[Phase::A],
            c.position[0],
            c.k_used[0].map_or("-".into(), |k| k.to_string()),
            w[0].cross_pair_error(pairing, c, Phase::A, fx)
        );
    }

    let rp = schedule(
        Strategy::RandomPosition { fs_hz: 2500.0 },
        &modulator,
        0.02,
        42,
    )?;
    println!();
    println!("residual at {fx} Hz over {} cycles:", sns.cycles.len());
    println!(
        "  chained  {:.3}",
        cancellation_residual(&sns.cycles, Phase::A, fx)
    );
    println!(
        "  random   {:.3}",
        cancellation_residual(&rp.cycles, Phase::A, fx)
    );
    println!(
        "fallbacks {}  chain restarts {}",
        sns.stats.total_fallbacks(),
        sns.stats.total_chain_restarts()
    );
    Ok(())
}
