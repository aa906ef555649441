//! Phase current of the 1.02 ohm / 0.59 mH load under CSVPWM and SNS-RP.

use sns_svpwm::circuit::{rl_current, LoadParams};
use sns_svpwm::modulator::{ModulatorConfig, Phase};
use sns_svpwm::scheduler::{schedule, CrossPairing, Strategy};
use sns_svpwm::synthesis::{phase_voltage_signal, pulse_train};

fn main() -> sns_svpwm::Result<()> {
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0)?;
    let load = LoadParams::new(1.02, 0.59e-3, 0.0)?;
    println!("time constant {:.4} ms", load.tau_s() * 1e3);
    let strategies = [
        Strategy::Csvpwm { fs_hz: 2500.0 },
        Strategy::SnsRp {
            fs_hz: 2500.0,
            fx_hz: 7000.0,
            pairing: CrossPairing::RiseToNextFall,
        },
    ];
    for s in strategies {
        let run = schedule(s, &modulator, 0.1, 1)?;
        let trains = [
            pulse_train(&run.cycles, Phase::A)?,
            pulse_train(&run.cycles, Phase::B)?,
            pulse_train(&run.cycles, Phase::C)?,
        ];
        let u_a = phase_voltage_signal(&trains, Phase::A, modulator.u_dc_v());
        // last fundamental period, 20 us steps
        let i = rl_current(&u_a, &load).sample(5e4, 0.08, 1000);
        let max = i.samples.iter().cloned().fold(f64::MIN, f64::max);
        let min = i.samples.iter().cloned().fold(f64::MAX, f64::min);
        println!("{:<8} i_a in [{min:+.2}, {max:+.2}] A", s.name());
        for n in (0..1000).step_by(100) {
            println!("  t = {:.4} s  i_a = {:+.3} A", i.time_of(n), i.samples[n]);
        }
    }
    Ok(())
}
