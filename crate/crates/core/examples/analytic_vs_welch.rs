//! Closed-form pulse-train spectrum against an FFT of the sampled waveform
//! for a 100-cycle schedule.

use sns_svpwm::modulator::{ModulatorConfig, Phase};
use sns_svpwm::scheduler::{schedule, CrossPairing, Strategy};
use sns_svpwm::spectrum::{
    analytic_psd_db, analytic_transform, pearson, welch_psd, WelchConfig, Window,
};
use sns_svpwm::synthesis::{pulse_train, sample_span};

fn main() -> sns_svpwm::Result<()> {
    let rate = 1e6;
    let len = 1 << 17;
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0)?;
    let s = Strategy::SnsRp {
        fs_hz: 2500.0,
        fx_hz: 7000.0,
        pairing: CrossPairing::RiseToNextFall,
    };
    let mut run = schedule(s, &modulator, 0.05, 3)?;
    run.cycles.truncate(100);

    let train = pulse_train(&run.cycles, Phase::A)?;
    // samples past the last cycle hold the final level; zero them to pad
    let mut wave = sample_span(&train.to_signal(), rate, 0.0, len);
    let end = (train.duration_s * rate).round() as usize;
    wave.samples[end..].iter_mut().for_each(|x| *x = 0.0);

    let cfg = WelchConfig {
        segment_len: len,
        overlap: 0.0,
        window: Window::Rectangular,
    };
    let fft = welch_psd(&wave, &cfg)?;
    let x = analytic_transform(&run.cycles, Phase::A, &fft.freqs_hz);
    let exact = analytic_psd_db(&x, len as f64 / rate);

    let band = fft.bins_in(500.0, 25_000.0);
    let sampled = fft.db_values();
    println!(
        "dB correlation over 0.5-25 kHz: {:.4}",
        pearson(&exact[band.clone()], &sampled[band])
    );
    println!("  freq_hz   analytic   fft");
    for f in [2500.0, 5000.0, 6900.0, 7000.0, 7100.0, 10000.0] {
        let i = fft.nearest_bin(f);
        println!(
            "{:>9.1}  {:>8.2}  {:>8.2}",
            fft.freqs_hz[i], exact[i], sampled[i]
        );
    }
    Ok(())
}
