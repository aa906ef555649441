use sns_svpwm::circuit::{rl_current, LoadParams};
use sns_svpwm::modulator::{ModulatorConfig, Phase};
use sns_svpwm::scheduler::{schedule, Strategy};
use sns_svpwm::synthesis::{phase_voltage_signal, pulse_train};

/// CSVPWM at an integer number of cycles per fundamental period drives a
/// periodic voltage; the current converges to its periodic orbit at the
/// load's natural decay rate.
#[test]
fn csvpwm_current_settles_geometrically() {
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0).unwrap();
    let run = schedule(Strategy::Csvpwm { fs_hz: 2500.0 }, &modulator, 0.2, 0).unwrap();
    let trains = [Phase::A, Phase::B, Phase::C].map(|p| pulse_train(&run.cycles, p).unwrap());
    let u = phase_voltage_signal(&trains, Phase::A, 24.0);
    let load = LoadParams::new(0.05, 0.59e-3, 0.0).unwrap();
    let period = 0.02;
    let per = 20_000;
    let i = rl_current(&u, &load)
        .sample(per as f64 / period, 0.0, 10 * per)
        .samples;
    let diffs: Vec<f64> = (0..8)
        .map(|p| {
            let a = &i[p * per..(p + 1) * per];
            let b = &i[(p + 1) * per..(p + 2) * per];
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    let expected = (-load.r_ohm() * period / load.l_h()).exp();
    for w in diffs.windows(2) {
        let ratio = w[1] / w[0];
        assert!(
            (ratio - expected).abs() < 1e-3 * expected,
            "{ratio} vs {expected}"
        );
    }
}

#[test]
fn load_current_tracks_fundamental() {
    let modulator = ModulatorConfig::new(0.7, 50.0, 24.0).unwrap();
    let run = schedule(Strategy::Csvpwm { fs_hz: 2500.0 }, &modulator, 0.1, 0).unwrap();
    let trains = [Phase::A, Phase::B, Phase::C].map(|p| pulse_train(&run.cycles, p).unwrap());
    let u = phase_voltage_signal(&trains, Phase::A, 24.0);
    let load = LoadParams::new(1.02, 0.59e-3, 0.0).unwrap();
    // one fundamental period after the start-up transient has died out
    let i = rl_current(&u, &load).sample(1e5, 0.06, 2000).samples;
    let w = 2.0 * std::f64::consts::PI * 50.0;
    let (mut re, mut im) = (0.0, 0.0);
    for (n, x) in i.iter().enumerate() {
        let t = n as f64 / 1e5;
        re += x * (w * t).cos();
        im += x * (w * t).sin();
    }
    let fundamental = 2.0 * (re * re + im * im).sqrt() / i.len() as f64;
    // fundamental phase amplitude M u_dc / sqrt(3) over |R + j w L|
    let z = (1.02f64.powi(2) + (2.0 * std::f64::consts::PI * 50.0 * 0.59e-3f64).powi(2)).sqrt();
    let expected = 0.7 * 24.0 / 3f64.sqrt() / z;
    assert!(
        (fundamental / expected - 1.0).abs() < 0.02,
        "{fundamental} vs {expected}"
    );
}
