//! Closed-form pulse-position and switching-frequency laws.
//!
//! Every SNS law chains consecutive cycles of one phase so that, at the
//! target frequency `fx`, an edge of cycle `m + 1` lands an integer number of
//! `fx` periods after an edge of cycle `m`. The integer `k` is drawn from the
//! range that keeps the next pulse inside its cycle (`0 <= R <= 1 - D`) and,
//! for banded laws, the next switching frequency inside `[fs_min, fs_max]`.
//!
//! Positions `R` and duties `D` are fractions of the cycle period.

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Inclusive range of admissible cancellation integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub min: i64,
    pub max: i64,
}

impl KRange {
    /// `ceil(lo)..=floor(hi)`, or `None` when empty.
    pub fn from_bounds(lo: f64, hi: f64) -> Option<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return None;
        }
        let min = lo.ceil();
        let max = hi.floor();
        if min > max {
            None
        } else {
            Some(Self {
                min: min as i64,
                max: max as i64,
            })
        }
    }

    pub fn count(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn contains(&self, k: i64) -> bool {
        (self.min..=self.max).contains(&k)
    }

    /// Each member with equal probability.
    pub fn draw(&self, rng: &mut SeededRng) -> i64 {
        rng.uniform_int(self.min, self.max)
    }
}

// Fixed-frequency baselines.

/// Center-aligned pulse.
pub fn position_center(duty: f64) -> f64 {
    (1.0 - duty) / 2.0
}

/// Uniform position in `[0, 1 - D]`.
pub fn position_random(duty: f64, rng: &mut SeededRng) -> f64 {
    rng.uniform(0.0, 1.0 - duty)
}

pub fn frequency_random(fs_min: f64, fs_max: f64, rng: &mut SeededRng) -> f64 {
    rng.uniform(fs_min, fs_max)
}

// Fixed switching frequency, random position.

/// `k` range for the rise-to-next-fall chain at fixed `fs`.
///
/// `ceil(fx/fs * (1 - r_prev + d_next)) ..= floor(fx/fs * (2 - r_prev))`
pub fn k_range_sns_rp(fx: f64, fs: f64, r_prev: f64, d_next: f64) -> Option<KRange> {
    let ratio = fx / fs;
    KRange::from_bounds(ratio * (1.0 - r_prev + d_next), ratio * (2.0 - r_prev))
}

/// `k` range for the fall-to-next-rise chain at fixed `fs`.
pub fn k_range_sns_rp_fall(
    fx: f64,
    fs: f64,
    r_prev: f64,
    d_prev: f64,
    d_next: f64,
) -> Option<KRange> {
    let ratio = fx / fs;
    KRange::from_bounds(
        ratio * (1.0 - r_prev - d_prev),
        ratio * (2.0 - r_prev - d_prev - d_next),
    )
}

/// Next position placing the next falling edge `k / fx` after the previous rising edge.
pub fn position_sns_rp(fx: f64, fs: f64, r_prev: f64, d_next: f64, k: i64) -> f64 {
    k as f64 / fx * fs + (r_prev - d_next - 1.0)
}

/// Next position placing the next rising edge `k / fx` after the previous falling edge.
pub fn position_sns_rp_fall(fx: f64, fs: f64, r_prev: f64, d_prev: f64, k: i64) -> f64 {
    k as f64 / fx * fs + (r_prev + d_prev - 1.0)
}

/// Which edges of consecutive cycles are paired at `fx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossPairing {
    /// Falling edge of cycle `m + 1` follows the rising edge of cycle `m`.
    RiseToNextFall,
    /// Rising edge of cycle `m + 1` follows the falling edge of cycle `m`.
    FallToNextRise,
}

impl CrossPairing {
    pub fn name(self) -> &'static str {
        match self {
            CrossPairing::RiseToNextFall => "rise_to_next_fall",
            CrossPairing::FallToNextRise => "fall_to_next_rise",
        }
    }
}

/// Draws `k` and returns the next position and the `k` used.
pub fn next_position_sns_rp(
    fx: f64,
    fs: f64,
    r_prev: f64,
    d_prev: f64,
    d_next: f64,
    pairing: CrossPairing,
    rng: &mut SeededRng,
) -> Result<(f64, i64)> {
    let (range, offset) = match pairing {
        CrossPairing::RiseToNextFall => (
            k_range_sns_rp(fx, fs, r_prev, d_next),
            r_prev - d_next - 1.0,
        ),
        CrossPairing::FallToNextRise => (
            k_range_sns_rp_fall(fx, fs, r_prev, d_prev, d_next),
            r_prev + d_prev - 1.0,
        ),
    };
    let k = range.ok_or(Error::Infeasible)?.draw(rng);
    Ok((clamp_position(k as f64 / fx * fs + offset, d_next), k))
}

/// Lowest target frequency for which the fixed-frequency chain can exist.
///
/// Fall-to-next-rise: `fs / (2 - d_min)`; rise-to-next-fall: `fs / (2 + d_max)`.
pub fn feasibility_min_fx(pairing: CrossPairing, fs: f64, d_min: f64, d_max: f64) -> f64 {
    match pairing {
        CrossPairing::FallToNextRise => fs / (2.0 - d_min),
        CrossPairing::RiseToNextFall => fs / (2.0 + d_max),
    }
}

// Random frequency and random position.

/// `k` range keeping the frequency from [`freq_sns_rf_rp`] inside `[fs_min, fs_max]`.
pub fn k_range_sns_rf_rp_freq(
    fx: f64,
    fs_prev: f64,
    r_prev: f64,
    r_next: f64,
    d_next: f64,
    fs_min: f64,
    fs_max: f64,
) -> Option<KRange> {
    let carry = (1.0 - r_prev) / fs_prev;
    let span = r_next + d_next;
    KRange::from_bounds(fx * (span / fs_max + carry), fx * (span / fs_min + carry))
}

/// Next switching frequency given the next position and `k`.
pub fn freq_sns_rf_rp(fx: f64, fs_prev: f64, r_prev: f64, r_next: f64, d_next: f64, k: i64) -> f64 {
    (r_next + d_next) / (k as f64 / fx + r_prev / fs_prev - 1.0 / fs_prev)
}

/// [`freq_sns_rf_rp`] with a band check.
#[allow(clippy::too_many_arguments)]
pub fn checked_freq_sns_rf_rp(
    fx: f64,
    fs_prev: f64,
    r_prev: f64,
    r_next: f64,
    d_next: f64,
    k: i64,
    fs_min: f64,
    fs_max: f64,
) -> Result<f64> {
    let fs = freq_sns_rf_rp(fx, fs_prev, r_prev, r_next, d_next, k);
    in_band(fs, fs_min, fs_max)
}

/// `k` range keeping the position from [`position_sns_rf_rp`] inside `[0, 1 - d_next]`.
pub fn k_range_sns_rf_rp_pos(
    fx: f64,
    fs_prev: f64,
    fs_next: f64,
    r_prev: f64,
    d_next: f64,
) -> Option<KRange> {
    let carry = (1.0 - r_prev) / fs_prev;
    KRange::from_bounds(
        fx * (d_next / fs_next + carry),
        fx * (1.0 / fs_next + carry),
    )
}

/// Next position given the next switching frequency and `k`.
pub fn position_sns_rf_rp(
    fx: f64,
    fs_prev: f64,
    fs_next: f64,
    r_prev: f64,
    d_next: f64,
    k: i64,
) -> f64 {
    let ratio = fs_next / fs_prev;
    k as f64 / fx * fs_next + ratio * r_prev - d_next - ratio
}

/// [`position_sns_rf_rp`] with a bounds check.
pub fn checked_position_sns_rf_rp(
    fx: f64,
    fs_prev: f64,
    fs_next: f64,
    r_prev: f64,
    d_next: f64,
    k: i64,
) -> Result<f64> {
    let r = position_sns_rf_rp(fx, fs_prev, fs_next, r_prev, d_next, k);
    if r < -POSITION_SLACK || r > 1.0 - d_next + POSITION_SLACK {
        return Err(Error::PositionOutOfRange {
            position: r,
            max: 1.0 - d_next,
        });
    }
    Ok(clamp_position(r, d_next))
}

pub(crate) const POSITION_SLACK: f64 = 1e-9;
pub(crate) const BAND_SLACK: f64 = 1e-9;

/// Clamp float residue (order 1e-15) back into `[0, 1 - d]`.
pub(crate) fn clamp_position(r: f64, d: f64) -> f64 {
    debug_assert!(
        r > -POSITION_SLACK && r < 1.0 - d + POSITION_SLACK,
        "position {r} far outside [0, {}]",
        1.0 - d
    );
    r.clamp(0.0, (1.0 - d).max(0.0))
}

pub(crate) fn in_band(fs: f64, fs_min: f64, fs_max: f64) -> Result<f64> {
    let slack = BAND_SLACK * fs_max;
    if !(fs.is_finite() && fs >= fs_min - slack && fs <= fs_max + slack) {
        return Err(Error::OutOfBand {
            fs_hz: fs,
            min_hz: fs_min,
            max_hz: fs_max,
        });
    }
    Ok(fs.clamp(fs_min, fs_max))
}
