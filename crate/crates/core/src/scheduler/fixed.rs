//! Fixed pulse position, frequency chosen per cycle.
//!
//! With the pulse pinned to the front, center or back of its cycle, the only
//! free variable is the next switching frequency. Every cell of the
//! position x pairing table reduces to
//!
//! ```text
//! fs_next = numerator / (k / fx - offset)
//! ```
//!
//! and the `k` range follows from the band limits exactly like the banded
//! random-position law. The center cells agree with the published closed
//! forms; the front/back cells are derived from the edge times directly.
//! For fall-to-next-rise pairing the front and back cells coincide: both
//! constrain a cycle's own length via `(1 - D) / fs = k / fx` (the front cell
//! pairs that cycle's falling edge with the following rising edge).

use super::recursion::{in_band, CrossPairing, KRange};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulsePosition {
    Front,
    Center,
    Back,
}

impl PulsePosition {
    pub fn position(self, duty: f64) -> f64 {
        match self {
            PulsePosition::Front => 0.0,
            PulsePosition::Center => (1.0 - duty) / 2.0,
            PulsePosition::Back => 1.0 - duty,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PulsePosition::Front => "front",
            PulsePosition::Center => "center",
            PulsePosition::Back => "back",
        }
    }
}

/// `fs_next = numerator / (k / fx - offset_s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyLaw {
    pub numerator: f64,
    pub offset_s: f64,
}

impl FrequencyLaw {
    pub fn new(
        position: PulsePosition,
        pairing: CrossPairing,
        fs_prev: f64,
        d_prev: f64,
        d_next: f64,
    ) -> Self {
        let r_prev = position.position(d_prev);
        let r_next = position.position(d_next);
        match pairing {
            CrossPairing::RiseToNextFall => Self {
                numerator: r_next + d_next,
                offset_s: (1.0 - r_prev) / fs_prev,
            },
            CrossPairing::FallToNextRise => {
                Self::standalone(position, pairing, d_next).unwrap_or(Self {
                    numerator: r_next,
                    offset_s: (1.0 - r_prev - d_prev) / fs_prev,
                })
            }
        }
    }

    /// The law for cells that do not look at the previous cycle (front pulse
    /// with fall-to-next-rise pairing); `None` for every other cell.
    pub fn standalone(position: PulsePosition, pairing: CrossPairing, d_next: f64) -> Option<Self> {
        match (position, pairing) {
            (PulsePosition::Front, CrossPairing::FallToNextRise) => Some(Self {
                numerator: 1.0 - d_next,
                offset_s: 0.0,
            }),
            _ => None,
        }
    }

    pub fn frequency(&self, fx: f64, k: i64) -> f64 {
        self.numerator / (k as f64 / fx - self.offset_s)
    }

    pub fn k_range(&self, fx: f64, fs_min: f64, fs_max: f64) -> Option<KRange> {
        if self.numerator <= 0.0 {
            return None;
        }
        KRange::from_bounds(
            fx * (self.offset_s + self.numerator / fs_max),
            fx * (self.offset_s + self.numerator / fs_min),
        )
    }
}

pub fn table2_next_freq(
    position: PulsePosition,
    pairing: CrossPairing,
    fx: f64,
    fs_prev: f64,
    d_prev: f64,
    d_next: f64,
    k: i64,
) -> f64 {
    FrequencyLaw::new(position, pairing, fs_prev, d_prev, d_next).frequency(fx, k)
}

/// [`table2_next_freq`] with the band check.
#[allow(clippy::too_many_arguments)]
pub fn checked_table2_next_freq(
    position: PulsePosition,
    pairing: CrossPairing,
    fx: f64,
    fs_prev: f64,
    d_prev: f64,
    d_next: f64,
    k: i64,
    fs_min: f64,
    fs_max: f64,
) -> Result<f64> {
    in_band(
        table2_next_freq(position, pairing, fx, fs_prev, d_prev, d_next, k),
        fs_min,
        fs_max,
    )
}

/// Same-cycle cancellation: pulse width equals `k / fx`.
pub fn within_cycle_freq(duty: f64, fx: f64, k: i64) -> f64 {
    duty * fx / k as f64
}
