use std::f64::consts::PI;

use proptest::prelude::*;
use rustfft::num_complex::Complex64;
use sns_svpwm::modulator::{ModulatorConfig, Phase};
use sns_svpwm::rng::SeededRng;
use sns_svpwm::scheduler::{
    schedule, synthetic_chain, CrossPairing, CycleRecord, SnsRfRpVariant, Strategy,
};
use sns_svpwm::spectrum::{
    analytic_transform, cancellation_residual, welch_psd, WelchConfig, Window,
};
use sns_svpwm::synthesis::{pulse_train, sample, SampledWaveform};

const FX: f64 = 7000.0;

fn chained(index: usize) -> Strategy {
    match index {
        0 => Strategy::SnsRp {
            fs_hz: 2500.0,
            fx_hz: FX,
            pairing: CrossPairing::RiseToNextFall,
        },
        1 => Strategy::SnsRp {
            fs_hz: 2500.0,
            fx_hz: FX,
            pairing: CrossPairing::FallToNextRise,
        },
        2 => Strategy::SnsRfRp {
            fs_min_hz: 1500.0,
            fs_max_hz: 3500.0,
            fx_hz: FX,
            variant: SnsRfRpVariant::FrequencyFromPosition,
        },
        _ => Strategy::SnsRfRp {
            fs_min_hz: 1500.0,
            fs_max_hz: 3500.0,
            fx_hz: FX,
            variant: SnsRfRpVariant::PositionFromFrequency,
        },
    }
}

/// Edge-by-edge transform written out from the pulse definition.
fn direct_transform(records: &[CycleRecord], f: f64) -> Complex64 {
    let w = 2.0 * PI * f;
    records
        .iter()
        .filter(|r| r.duty[Phase::A] > 0.0)
        .map(|r| {
            let (t0, t1) = (r.rise_time(Phase::A), r.fall_time(Phase::A));
            // integral of exp(-j w t) over [t0, t1]
            (Complex64::from_polar(1.0, -w * t0) - Complex64::from_polar(1.0, -w * t1))
                / Complex64::new(0.0, w)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unbroken_chain_residual_is_bounded(index in 0..4usize, n in 2usize..400, seed in any::<u64>()) {
        let recs = synthetic_chain(&chained(index), n, (0.1, 0.9), &mut SeededRng::new(seed)).unwrap();
        let res = cancellation_residual(&recs, Phase::A, FX);
        prop_assert!(res <= 2.0 + 1e-9, "{res}");
        let x = analytic_transform(&recs, Phase::A, &[FX])[0];
        prop_assert!(x.norm() <= 2.0 / (2.0 * PI * FX) + 1e-12);
    }

    #[test]
    fn transform_matches_direct_sum(seed in any::<u64>(), f in 10.0f64..50_000.0) {
        let s = Strategy::RandomFrequency { fs_min_hz: 1500.0, fs_max_hz: 3500.0 };
        let recs = synthetic_chain(&s, 50, (0.05, 0.95), &mut SeededRng::new(seed)).unwrap();
        let x = analytic_transform(&recs, Phase::A, &[f])[0];
        let y = direct_transform(&recs, f);
        prop_assert!((x - y).norm() <= 1e-9 * y.norm().max(1e-6));
    }

    #[test]
    fn linear_in_records(seed in any::<u64>(), split in 1usize..99) {
        let s = Strategy::RandomPosition { fs_hz: 2500.0 };
        let recs = synthetic_chain(&s, 100, (0.1, 0.9), &mut SeededRng::new(seed)).unwrap();
        let grid = [123.0, 2500.0, 7000.0, 12_345.6];
        let whole = analytic_transform(&recs, Phase::A, &grid);
        let a = analytic_transform(&recs[..split], Phase::A, &grid);
        let b = analytic_transform(&recs[split..], Phase::A, &grid);
        for i in 0..grid.len() {
            prop_assert!((whole[i] - a[i] - b[i]).norm() <= 1e-12);
        }
    }

    #[test]
    fn conjugate_symmetric(seed in any::<u64>(), f in 1.0f64..30_000.0) {
        let s = Strategy::RandomPosition { fs_hz: 2500.0 };
        let recs = synthetic_chain(&s, 60, (0.1, 0.9), &mut SeededRng::new(seed)).unwrap();
        let x = analytic_transform(&recs, Phase::A, &[f, -f]);
        prop_assert!((x[1] - x[0].conj()).norm() <= 1e-12);
    }
}

#[test]
fn random_position_residual_grows() {
    let s = Strategy::RandomPosition { fs_hz: 2500.0 };
    let mean = |n: usize| {
        (0..100)
            .map(|seed| {
                let recs = synthetic_chain(&s, n, (0.1, 0.9), &mut SeededRng::new(seed)).unwrap();
                cancellation_residual(&recs, Phase::A, FX)
            })
            .sum::<f64>()
            / 100.0
    };
    let (small, large) = (mean(100), mean(1600));
    // sqrt(16) = 4; allow Monte Carlo scatter
    assert!(
        large / small > 3.0 && large / small < 5.0,
        "{small} {large}"
    );
}

#[test]
fn scheduled_null_survives_sampling() {
    let modulator = ModulatorConfig::new(0.5, 50.0, 24.0).unwrap();
    let cfg = WelchConfig {
        segment_len: 1 << 16,
        overlap: 0.5,
        window: Window::Hann,
    };
    let psd = |s: Strategy| {
        let run = schedule(s, &modulator, 1.0, 11).unwrap();
        let train = pulse_train(&run.cycles, Phase::A).unwrap();
        let wave: SampledWaveform = sample(&train.to_signal(), 1e6, 3500.0).unwrap();
        welch_psd(&wave, &cfg).unwrap()
    };
    let sns = psd(chained(0));
    let rp = psd(Strategy::RandomPosition { fs_hz: 2500.0 });
    let bin = sns.nearest_bin(FX);
    let gap = rp.db_values()[bin] - sns.db_values()[bin];
    assert!(gap > 10.0, "{gap}");
}
