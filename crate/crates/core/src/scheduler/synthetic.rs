//! Single-phase schedules with random duties, independent of the modulator.

use super::fixed::{FrequencyLaw, PulsePosition};
use super::recursion::*;
use super::{CycleRecord, SnsRfRpVariant, Strategy};
use crate::error::{Error, Result};
use crate::modulator::DutyTriple;
use crate::rng::SeededRng;

const MAX_REDRAWS: usize = 10_000;

/// `n` cycles on phase A with duties uniform in `duty_range`.
///
/// For SNS strategies every cycle after the first is chained: a duty (and,
/// where the law draws one, frequency or position) that leaves no admissible
/// `k` is redrawn, so the chain never breaks. Baseline strategies simply
/// apply their position/frequency rule.
pub fn synthetic_chain(
    strategy: &Strategy,
    n: usize,
    duty_range: (f64, f64),
    rng: &mut SeededRng,
) -> Result<Vec<CycleRecord>> {
    let (d_lo, d_hi) = duty_range;
    if !(0.0 < d_lo && d_lo <= d_hi && d_hi <= 1.0) {
        return Err(Error::config(format!(
            "duty range must satisfy 0 < lo <= hi <= 1, got [{d_lo}, {d_hi}]"
        )));
    }
    let (fs_min, fs_max) = strategy.band_hz();
    let mut out: Vec<CycleRecord> = Vec::with_capacity(n);
    let mut t = 0.0;

    for m in 1..=n {
        let prev = out.last().copied();
        let (fs, d, r, k) = match (strategy, prev) {
            (Strategy::Csvpwm { fs_hz }, _) => {
                let d = rng.uniform(d_lo, d_hi);
                (*fs_hz, d, position_center(d), None)
            }
            (Strategy::RandomPosition { fs_hz }, _) => {
                let d = rng.uniform(d_lo, d_hi);
                (*fs_hz, d, position_random(d, rng), None)
            }
            (Strategy::RandomFrequency { .. }, _) => {
                let fs = frequency_random(fs_min, fs_max, rng);
                let d = rng.uniform(d_lo, d_hi);
                (fs, d, position_center(d), None)
            }
            (
                Strategy::FixedPosition {
                    position,
                    pairing,
                    fx_hz,
                    ..
                },
                None,
            ) => first_fixed_cycle(
                *position,
                *pairing,
                *fx_hz,
                duty_range,
                (fs_min, fs_max),
                rng,
            )?,
            (_, None) => {
                let fs = frequency_random(fs_min, fs_max, rng);
                let d = rng.uniform(d_lo, d_hi);
                (fs, d, position_random(d, rng), None)
            }
            (_, Some(p)) => chained_step(strategy, &p, duty_range, rng)?,
        };
        out.push(CycleRecord {
            m,
            t_m: t,
            ts: 1.0 / fs,
            duty: DutyTriple::new(d, 0.0, 0.0),
            position: [r, 0.5, 0.5],
            sector: 1,
            k_used: [k, None, None],
            fallback: [false; 3],
        });
        t += 1.0 / fs;
    }
    Ok(out)
}

/// Opening cycle of a fixed-position chain; a law that ignores the previous
/// cycle already applies here.
fn first_fixed_cycle(
    position: PulsePosition,
    pairing: CrossPairing,
    fx: f64,
    (d_lo, d_hi): (f64, f64),
    (fs_min, fs_max): (f64, f64),
    rng: &mut SeededRng,
) -> Result<(f64, f64, f64, Option<i64>)> {
    for _ in 0..MAX_REDRAWS {
        let d = rng.uniform(d_lo, d_hi);
        let Some(law) = FrequencyLaw::standalone(position, pairing, d) else {
            return Ok((
                frequency_random(fs_min, fs_max, rng),
                d,
                position.position(d),
                None,
            ));
        };
        if let Some(range) = law.k_range(fx, fs_min, fs_max) {
            let k = range.draw(rng);
            if let Ok(fs) = in_band(law.frequency(fx, k), fs_min, fs_max) {
                return Ok((fs, d, position.position(d), Some(k)));
            }
        }
    }
    Err(Error::Infeasible)
}

fn chained_step(
    strategy: &Strategy,
    prev: &CycleRecord,
    (d_lo, d_hi): (f64, f64),
    rng: &mut SeededRng,
) -> Result<(f64, f64, f64, Option<i64>)> {
    let r_prev = prev.position[0];
    let d_prev = prev.duty.a();
    let fs_prev = prev.fs();
    for _ in 0..MAX_REDRAWS {
        let d = rng.uniform(d_lo, d_hi);
        let solved = match *strategy {
            Strategy::SnsRp {
                fs_hz,
                fx_hz,
                pairing,
            } => next_position_sns_rp(fx_hz, fs_hz, r_prev, d_prev, d, pairing, rng)
                .ok()
                .map(|(r, k)| (fs_hz, r, k)),
            Strategy::SnsRfRp {
                fs_min_hz,
                fs_max_hz,
                fx_hz,
                variant: SnsRfRpVariant::PositionFromFrequency,
            } => {
                let fs = frequency_random(fs_min_hz, fs_max_hz, rng);
                k_range_sns_rf_rp_pos(fx_hz, fs_prev, fs, r_prev, d).map(|range| {
                    let k = range.draw(rng);
                    let r = position_sns_rf_rp(fx_hz, fs_prev, fs, r_prev, d, k);
                    (fs, clamp_position(r, d), k)
                })
            }
            Strategy::SnsRfRp {
                fs_min_hz,
                fs_max_hz,
                fx_hz,
                variant: SnsRfRpVariant::FrequencyFromPosition,
            } => {
                let r = position_random(d, rng);
                k_range_sns_rf_rp_freq(fx_hz, fs_prev, r_prev, r, d, fs_min_hz, fs_max_hz).and_then(
                    |range| {
                        let k = range.draw(rng);
                        checked_freq_sns_rf_rp(
                            fx_hz, fs_prev, r_prev, r, d, k, fs_min_hz, fs_max_hz,
                        )
                        .ok()
                        .map(|fs| (fs, r, k))
                    },
                )
            }
            Strategy::FixedPosition {
                fs_min_hz,
                fs_max_hz,
                fx_hz,
                position,
                pairing,
            } => {
                let law = FrequencyLaw::new(position, pairing, fs_prev, d_prev, d);
                law.k_range(fx_hz, fs_min_hz, fs_max_hz).and_then(|range| {
                    let k = range.draw(rng);
                    in_band(law.frequency(fx_hz, k), fs_min_hz, fs_max_hz)
                        .ok()
                        .map(|fs| (fs, position.position(d), k))
                })
            }
            Strategy::Csvpwm { .. }
            | Strategy::RandomPosition { .. }
            | Strategy::RandomFrequency { .. } => unreachable!("baselines are not chained"),
        };
        if let Some((fs, r, k)) = solved {
            return Ok((fs, d, r, Some(k)));
        }
    }
    Err(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulator::Phase;
    use crate::scheduler::CrossPairing;

    #[test]
    fn chained_cycles_all_carry_k() {
        let s = Strategy::SnsRp {
            fs_hz: 2500.0,
            fx_hz: 7000.0,
            pairing: CrossPairing::FallToNextRise,
        };
        let recs = synthetic_chain(&s, 200, (0.1, 0.9), &mut SeededRng::new(1)).unwrap();
        assert_eq!(recs.len(), 200);
        assert!(recs[0].k_used[0].is_none());
        assert!(recs[1..].iter().all(|r| r.k_used[0].is_some()));
        for w in recs.windows(2) {
            let e = w[0].cross_pair_error(CrossPairing::FallToNextRise, &w[1], Phase::A, 7000.0);
            assert!(e.abs() < 1e-7);
        }
    }

    #[test]
    fn standalone_front_law_applies_to_first_cycle() {
        let s = Strategy::FixedPosition {
            fs_min_hz: 1500.0,
            fs_max_hz: 3500.0,
            fx_hz: 7000.0,
            position: PulsePosition::Front,
            pairing: CrossPairing::FallToNextRise,
        };
        let recs = synthetic_chain(&s, 10, (0.1, 0.9), &mut SeededRng::new(2)).unwrap();
        assert!(recs
            .iter()
            .all(|r| r.k_used[0].is_some() && r.position[0] == 0.0));
    }

    #[test]
    fn rejects_bad_duty_range() {
        let s = Strategy::Csvpwm { fs_hz: 2500.0 };
        let mut rng = SeededRng::new(0);
        assert!(synthetic_chain(&s, 5, (0.0, 0.5), &mut rng).is_err());
        assert!(synthetic_chain(&s, 5, (0.6, 0.5), &mut rng).is_err());
    }
}
