//! 5-segment SVPWM duty cycles.
//!
//! The voltage-vector angle `theta` is the absolute electrical angle in
//! `[0, 2π)`. Each 60° sector clamps one phase to zero: C in sectors I-II,
//! A in III-IV, B in V-VI. The remaining two duties are sinusoids of the
//! absolute angle scaled by the modulation index.

use std::f64::consts::{FRAC_PI_3, TAU};
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// One inverter leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    A,
    B,
    C,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::A, Phase::B, Phase::C];

    pub fn index(self) -> usize {
        match self {
            Phase::A => 0,
            Phase::B => 1,
            Phase::C => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Phase::A => "a",
            Phase::B => "b",
            Phase::C => "c",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::A => "A",
            Phase::B => "B",
            Phase::C => "C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulatorConfig {
    m_index: f64,
    f1_hz: f64,
    u_dc_v: f64,
}

impl ModulatorConfig {
    pub fn new(m_index: f64, f1_hz: f64, u_dc_v: f64) -> Result<Self> {
        if !(m_index > 0.0 && m_index <= 1.0) {
            return Err(Error::config(format!(
                "modulation index must be in (0, 1], got {m_index}"
            )));
        }
        if !(f1_hz > 0.0 && f1_hz.is_finite()) {
            return Err(Error::config(format!(
                "fundamental frequency must be positive, got {f1_hz}"
            )));
        }
        if !(u_dc_v > 0.0 && u_dc_v.is_finite()) {
            return Err(Error::config(format!(
                "DC link voltage must be positive, got {u_dc_v}"
            )));
        }
        Ok(Self {
            m_index,
            f1_hz,
            u_dc_v,
        })
    }

    pub fn m_index(&self) -> f64 {
        self.m_index
    }

    pub fn f1_hz(&self) -> f64 {
        self.f1_hz
    }

    pub fn u_dc_v(&self) -> f64 {
        self.u_dc_v
    }

    /// Voltage-vector angle at time `t`, wrapped to `[0, 2π)`.
    pub fn angle_at(&self, t: f64) -> f64 {
        angle_at(self.f1_hz, t)
    }

    pub fn duty_at(&self, t: f64) -> DutyTriple {
        duty_cycles(self.m_index, self.angle_at(t))
    }
}

/// Per-phase duty cycles of one switching cycle, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DutyTriple(pub [f64; 3]);

impl DutyTriple {
    pub fn new(d_a: f64, d_b: f64, d_c: f64) -> Self {
        Self([d_a, d_b, d_c])
    }

    pub fn a(&self) -> f64 {
        self.0[0]
    }

    pub fn b(&self) -> f64 {
        self.0[1]
    }

    pub fn c(&self) -> f64 {
        self.0[2]
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

impl Index<Phase> for DutyTriple {
    type Output = f64;

    fn index(&self, phase: Phase) -> &f64 {
        &self.0[phase.index()]
    }
}

impl IndexMut<Phase> for DutyTriple {
    fn index_mut(&mut self, phase: Phase) -> &mut f64 {
        &mut self.0[phase.index()]
    }
}

pub fn angle_at(f1_hz: f64, t: f64) -> f64 {
    let theta = (TAU * f1_hz * t).rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative residues
    if theta >= TAU {
        0.0
    } else {
        theta
    }
}

/// Sector index 1..=6. Boundaries belong to the higher sector.
pub fn sector_of(theta: f64) -> u8 {
    let s = (theta / FRAC_PI_3).floor();
    if s < 0.0 {
        1
    } else if s >= 5.0 {
        6
    } else {
        s as u8 + 1
    }
}

pub fn duty_cycles(m_index: f64, theta: f64) -> DutyTriple {
    let m = m_index;
    let raw = match sector_of(theta) {
        1 | 2 => [m * (theta + FRAC_PI_3).sin(), m * theta.sin(), 0.0],
        3 | 4 => [
            0.0,
            m * (theta - FRAC_PI_3).sin(),
            -m * (theta + FRAC_PI_3).sin(),
        ],
        _ => [-m * (theta - FRAC_PI_3).sin(), 0.0, -m * theta.sin()],
    };
    DutyTriple(raw.map(|d| d.clamp(0.0, 1.0)))
}

/// Line-to-line average of `u_ab` over a cycle, as a fraction of `u_dc`.
pub fn mean_line_voltage_pu(duty: &DutyTriple) -> f64 {
    duty.a() - duty.b()
}
