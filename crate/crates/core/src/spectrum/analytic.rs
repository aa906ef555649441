use std::f64::consts::{PI, TAU};

use rustfft::num_complex::Complex64;

use super::{to_db, Spectrum, SpectrumMeta, SpectrumValues};
use crate::modulator::Phase;
use crate::scheduler::CycleRecord;

/// `exp(-j 2π f t)` with the phase reduced in cycles before scaling.
fn rotor(f: f64, t: f64) -> Complex64 {
    let (s, c) = (TAU * (f * t).rem_euclid(1.0)).sin_cos();
    Complex64::new(c, -s)
}

/// Sum over pulses of `exp(-j beta) - exp(-j alpha)` at `f`.
fn edge_sum(records: &[CycleRecord], phase: Phase, f: f64) -> Complex64 {
    records
        .iter()
        .filter(|r| r.duty(phase) > 0.0)
        .map(|r| rotor(f, r.rise_time(phase)) - rotor(f, r.fall_time(phase)))
        .sum()
}

/// Fourier transform of the phase's pulse train at each frequency.
///
/// `X(f) = (1 / (2jπf)) Σ_m [exp(-j β_m) - exp(-j α_m)]` where `β_m`, `α_m`
/// are the rising- and falling-edge angles `2πf t`. At `f = 0` the removable
/// singularity is replaced by the pulse area `Σ D T_s`.
pub fn analytic_transform(
    records: &[CycleRecord],
    phase: Phase,
    freqs_hz: &[f64],
) -> Vec<Complex64> {
    freqs_hz
        .iter()
        .map(|&f| {
            if f == 0.0 {
                let area: f64 = records.iter().map(|r| r.pulse_width(phase)).sum();
                Complex64::new(area, 0.0)
            } else {
                edge_sum(records, phase, f) / Complex64::new(0.0, 2.0 * PI * f)
            }
        })
        .collect()
}

pub fn analytic_spectrum(records: &[CycleRecord], phase: Phase, freqs_hz: &[f64]) -> Spectrum {
    let resolution_hz = match freqs_hz {
        [a, b, ..] => b - a,
        _ => 0.0,
    };
    Spectrum {
        freqs_hz: freqs_hz.to_vec(),
        values: SpectrumValues::Complex(analytic_transform(records, phase, freqs_hz)),
        meta: SpectrumMeta {
            resolution_hz,
            window: None,
            segment_len: None,
            overlap: None,
            segments: 1,
        },
    }
}

/// One-sided PSD estimate `2 |X|^2 / T` in dB.
pub fn analytic_psd_db(transform: &[Complex64], total_s: f64) -> Vec<f64> {
    transform
        .iter()
        .map(|x| to_db(2.0 * x.norm_sqr() / total_s))
        .collect()
}

/// Magnitude of the bracketed edge sum at `fx`; zero when every rising-edge
/// term cancels a falling-edge term.
pub fn cancellation_residual(records: &[CycleRecord], phase: Phase, fx: f64) -> f64 {
    edge_sum(records, phase, fx).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulator::DutyTriple;
    use approx::assert_abs_diff_eq;

    fn rec(m: usize, t: f64, ts: f64, d: f64, r: f64) -> CycleRecord {
        CycleRecord {
            m,
            t_m: t,
            ts,
            duty: DutyTriple::new(d, 0.0, 0.0),
            position: [r, 0.5, 0.5],
            sector: 1,
            k_used: [None; 3],
            fallback: [false; 3],
        }
    }

    #[test]
    fn single_pulse_limits() {
        let r = [rec(1, 0.0, 1.0, 0.5, 0.25)];
        let x = analytic_transform(&r, Phase::A, &[1e-7, 4.0, 0.0]);
        assert_abs_diff_eq!(x[0].norm(), 0.5, epsilon = 1e-9);
        assert!(x[1].norm() < 1e-12);
        assert_eq!(x[2], Complex64::new(0.5, 0.0));
    }

    #[test]
    fn sinc_shape() {
        // |X(f)| = |sin(π f D T)| / (π f)
        let r = [rec(1, 0.3, 2e-3, 0.35, 0.4)];
        for f in [100.0, 1234.5, 7000.0, 21000.0] {
            let x = analytic_transform(&r, Phase::A, &[f])[0];
            let expected = (PI * f * 0.35 * 2e-3).sin().abs() / (PI * f);
            assert_abs_diff_eq!(x.norm(), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn empty_residual() {
        assert_eq!(cancellation_residual(&[], Phase::A, 7000.0), 0.0);
    }

    #[test]
    fn constructed_pair_cancels() {
        // second falling edge placed exactly 4 periods of fx after the first rising edge
        let fx = 7000.0;
        let ts = 4e-4;
        let a = rec(1, 0.0, ts, 0.4, 0.2);
        let r2 = 4.0 / fx / ts + 0.2 - 0.4 - 1.0;
        let b = rec(2, ts, ts, 0.4, r2);
        let pair = [a, b];
        let interior = rotor(fx, a.rise_time(Phase::A)) - rotor(fx, b.fall_time(Phase::A));
        assert!(interior.norm() < 1e-12);
        let res = cancellation_residual(&pair, Phase::A, fx);
        let boundary = (rotor(fx, b.rise_time(Phase::A)) - rotor(fx, a.fall_time(Phase::A))).norm();
        assert_abs_diff_eq!(res, boundary, epsilon = 1e-12);
    }
}
