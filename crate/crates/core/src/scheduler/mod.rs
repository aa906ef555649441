//! Cycle-by-cycle pulse scheduling.
//!
//! [`schedule`] walks the run one switching cycle at a time. For each new
//! cycle it takes the duty from the modulator at the cycle start, then picks
//! the switching period and per-phase pulse positions according to the
//! [`Strategy`]. SNS strategies keep a per-phase cancellation chain; a phase
//! whose duty drops to zero breaks its chain (counted as a restart when it
//! resumes) and an empty `k` range degrades that phase to a random position
//! for one cycle (counted as a fallback).

mod fixed;
mod recursion;
mod synthetic;

use std::f64::consts::TAU;

pub use fixed::{
    checked_table2_next_freq, table2_next_freq, within_cycle_freq, FrequencyLaw, PulsePosition,
};
pub use recursion::{
    checked_freq_sns_rf_rp, checked_position_sns_rf_rp, feasibility_min_fx, freq_sns_rf_rp,
    frequency_random, k_range_sns_rf_rp_freq, k_range_sns_rf_rp_pos, k_range_sns_rp,
    k_range_sns_rp_fall, next_position_sns_rp, position_center, position_random,
    position_sns_rf_rp, position_sns_rp, position_sns_rp_fall, CrossPairing, KRange,
};
pub use synthetic::synthetic_chain;

use crate::error::{Error, Result};
use crate::modulator::{sector_of, DutyTriple, ModulatorConfig, Phase};
use crate::rng::SeededRng;
use recursion::{clamp_position, in_band};

/// How the frequency is coupled to the position in the banded SNS law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnsRfRpVariant {
    /// Draw the reference phase position, solve for the next frequency.
    FrequencyFromPosition,
    /// Draw the next frequency, solve for every phase position.
    PositionFromFrequency,
}

impl SnsRfRpVariant {
    pub fn name(self) -> &'static str {
        match self {
            SnsRfRpVariant::FrequencyFromPosition => "frequency_from_position",
            SnsRfRpVariant::PositionFromFrequency => "position_from_frequency",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    /// Fixed frequency, center-aligned pulses.
    Csvpwm { fs_hz: f64 },
    /// Fixed frequency, uniform random position.
    RandomPosition { fs_hz: f64 },
    /// Uniform random frequency, center-aligned pulses.
    RandomFrequency { fs_min_hz: f64, fs_max_hz: f64 },
    /// Fixed frequency, chained random position nulling `fx`.
    SnsRp {
        fs_hz: f64,
        fx_hz: f64,
        pairing: CrossPairing,
    },
    /// Random frequency and chained random position nulling `fx`.
    SnsRfRp {
        fs_min_hz: f64,
        fs_max_hz: f64,
        fx_hz: f64,
        variant: SnsRfRpVariant,
    },
    /// Fixed position, chained frequency nulling `fx` on the reference phase.
    FixedPosition {
        fs_min_hz: f64,
        fs_max_hz: f64,
        fx_hz: f64,
        position: PulsePosition,
        pairing: CrossPairing,
    },
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Csvpwm { .. } => "csvpwm",
            Strategy::RandomPosition { .. } => "rp",
            Strategy::RandomFrequency { .. } => "rf",
            Strategy::SnsRp { .. } => "sns_rp",
            Strategy::SnsRfRp { .. } => "sns_rf_rp",
            Strategy::FixedPosition { .. } => "fixed_position",
        }
    }

    /// Target null frequency, for SNS strategies.
    pub fn fx_hz(&self) -> Option<f64> {
        match *self {
            Strategy::SnsRp { fx_hz, .. }
            | Strategy::SnsRfRp { fx_hz, .. }
            | Strategy::FixedPosition { fx_hz, .. } => Some(fx_hz),
            _ => None,
        }
    }

    /// `(fs_min, fs_max)`; equal for fixed-frequency strategies.
    pub fn band_hz(&self) -> (f64, f64) {
        match *self {
            Strategy::Csvpwm { fs_hz }
            | Strategy::RandomPosition { fs_hz }
            | Strategy::SnsRp { fs_hz, .. } => (fs_hz, fs_hz),
            Strategy::RandomFrequency {
                fs_min_hz,
                fs_max_hz,
            }
            | Strategy::SnsRfRp {
                fs_min_hz,
                fs_max_hz,
                ..
            }
            | Strategy::FixedPosition {
                fs_min_hz,
                fs_max_hz,
                ..
            } => (fs_min_hz, fs_max_hz),
        }
    }

    pub fn max_switching_hz(&self) -> f64 {
        self.band_hz().1
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.band_hz();
        if !(lo > 0.0 && lo.is_finite() && hi.is_finite()) {
            return Err(Error::config(format!(
                "{}: switching frequency must be positive, got {lo} Hz",
                self.name()
            )));
        }
        if lo > hi {
            return Err(Error::config(format!(
                "{}: fs_min {lo} Hz exceeds fs_max {hi} Hz",
                self.name()
            )));
        }
        if let Some(fx) = self.fx_hz() {
            if !(fx > 0.0 && fx.is_finite()) {
                return Err(Error::config(format!(
                    "{}: target frequency must be positive, got {fx} Hz",
                    self.name()
                )));
            }
        }
        Ok(())
    }
}

/// Which phases run the cancellation chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainScope {
    /// Every phase keeps its own chain.
    #[default]
    AllPhases,
    /// Only phase A is chained; B and C use plain random positions.
    ReferencePhase,
}

impl ChainScope {
    pub fn name(self) -> &'static str {
        match self {
            ChainScope::AllPhases => "all_phases",
            ChainScope::ReferencePhase => "reference_phase",
        }
    }

    fn chains(self, phase: Phase) -> bool {
        self == ChainScope::AllPhases || phase == Phase::A
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategySpec {
    pub strategy: Strategy,
    pub scope: ChainScope,
}

impl StrategySpec {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            scope: ChainScope::default(),
        }
    }

    pub fn with_scope(mut self, scope: ChainScope) -> Self {
        self.scope = scope;
        self
    }
}

impl From<Strategy> for StrategySpec {
    fn from(strategy: Strategy) -> Self {
        Self::new(strategy)
    }
}

/// One switching cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleRecord {
    /// 1-based cycle index.
    pub m: usize,
    /// Cycle start, seconds.
    pub t_m: f64,
    /// Cycle period, seconds.
    pub ts: f64,
    pub duty: DutyTriple,
    /// Rising-edge offset as a fraction of `ts`, in `[0, 1 - duty]`.
    pub position: [f64; 3],
    pub sector: u8,
    pub k_used: [Option<i64>; 3],
    /// Phase fell back to a random position because no `k` existed.
    pub fallback: [bool; 3],
}

impl CycleRecord {
    pub fn duty(&self, phase: Phase) -> f64 {
        self.duty[phase]
    }

    pub fn position(&self, phase: Phase) -> f64 {
        self.position[phase.index()]
    }

    pub fn fs(&self) -> f64 {
        1.0 / self.ts
    }

    pub fn end(&self) -> f64 {
        self.t_m + self.ts
    }

    pub fn rise_time(&self, phase: Phase) -> f64 {
        self.t_m + self.position(phase) * self.ts
    }

    pub fn fall_time(&self, phase: Phase) -> f64 {
        self.t_m + (self.position(phase) + self.duty(phase)) * self.ts
    }

    /// Seconds the phase is high during this cycle.
    pub fn pulse_width(&self, phase: Phase) -> f64 {
        self.duty(phase) * self.ts
    }

    /// Edge phase angles `(alpha, beta)` at frequency `f`: falling edge, rising edge.
    pub fn edge_angles(&self, phase: Phase, f: f64) -> (f64, f64) {
        (
            TAU * f * self.fall_time(phase),
            TAU * f * self.rise_time(phase),
        )
    }

    /// Angle between this cycle's edges at `fx`, wrapped to `(-π, π]`.
    pub fn within_cycle_error(&self, phase: Phase, fx: f64) -> f64 {
        wrap_angle(TAU * fx * self.pulse_width(phase))
    }

    /// Angle mismatch of the paired edges of this cycle and `next` at `fx`,
    /// wrapped to `(-π, π]`. Zero means the pair cancels.
    pub fn cross_pair_error(
        &self,
        pairing: CrossPairing,
        next: &CycleRecord,
        phase: Phase,
        fx: f64,
    ) -> f64 {
        // difference the times first; absolute angles are large
        let gap = next.t_m - self.t_m;
        let dt = match pairing {
            CrossPairing::RiseToNextFall => {
                gap + (next.position(phase) + next.duty(phase)) * next.ts
                    - self.position(phase) * self.ts
            }
            CrossPairing::FallToNextRise => {
                gap + next.position(phase) * next.ts
                    - (self.position(phase) + self.duty(phase)) * self.ts
            }
        };
        wrap_angle(TAU * fx * dt)
    }
}

pub fn wrap_angle(x: f64) -> f64 {
    let w = x - TAU * (x / TAU).round();
    if w <= -std::f64::consts::PI {
        w + TAU
    } else {
        w
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScheduleStats {
    /// Per-phase cycles that fell back to a random position.
    pub fallbacks: [u64; 3],
    /// Per-phase chain restarts after a zero-duty cycle.
    pub chain_restarts: [u64; 3],
    pub warnings: Vec<String>,
}

impl ScheduleStats {
    pub fn total_fallbacks(&self) -> u64 {
        self.fallbacks.iter().sum()
    }

    pub fn total_chain_restarts(&self) -> u64 {
        self.chain_restarts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleRun {
    pub spec: StrategySpec,
    pub cycles: Vec<CycleRecord>,
    pub stats: ScheduleStats,
}

impl ScheduleRun {
    /// End time of the last cycle.
    pub fn end_time(&self) -> f64 {
        self.cycles.last().map_or(0.0, |c| c.end())
    }
}

/// Previous nonzero-duty cycle of one phase.
#[derive(Debug, Clone, Copy)]
struct Link {
    r: f64,
    d: f64,
    fs: f64,
}

#[derive(Debug, Clone, Copy)]
enum Chain {
    /// First cycle of the run.
    Start,
    Linked(Link),
    /// Last cycle had zero duty.
    Broken,
}

/// Per-phase decision for one cycle.
struct PhaseStep {
    r: f64,
    k: Option<i64>,
    fallback: bool,
}

struct Scheduler<'a> {
    spec: StrategySpec,
    modulator: &'a ModulatorConfig,
    rng: SeededRng,
    chains: [Chain; 3],
    stats: ScheduleStats,
}

/// Generates the cycles covering `[0, duration_s)`.
pub fn schedule(
    spec: impl Into<StrategySpec>,
    modulator: &ModulatorConfig,
    duration_s: f64,
    seed: u64,
) -> Result<ScheduleRun> {
    let spec = spec.into();
    spec.strategy.validate()?;
    if !(duration_s >= 0.0 && duration_s.is_finite()) {
        return Err(Error::config(format!(
            "duration must be a finite non-negative number of seconds, got {duration_s}"
        )));
    }

    let mut sched = Scheduler {
        spec,
        modulator,
        rng: SeededRng::new(seed),
        chains: [Chain::Start; 3],
        stats: ScheduleStats::default(),
    };
    sched.check_feasibility();

    let mut cycles = Vec::new();
    let mut t = 0.0_f64;
    while t < duration_s {
        let rec = sched.next_cycle(cycles.len() + 1, t);
        t = rec.t_m + rec.ts;
        cycles.push(rec);
    }

    Ok(ScheduleRun {
        spec,
        cycles,
        stats: sched.stats,
    })
}

impl Scheduler<'_> {
    fn check_feasibility(&mut self) {
        if let Strategy::SnsRp {
            fs_hz,
            fx_hz,
            pairing,
        } = self.spec.strategy
        {
            let d_max = self.modulator.m_index().min(1.0);
            let limit = feasibility_min_fx(pairing, fs_hz, 0.0, d_max);
            if fx_hz < limit {
                self.stats.warnings.push(format!(
                    "fx = {fx_hz} Hz is below the feasibility limit {limit:.3} Hz for fs = {fs_hz} Hz"
                ));
            }
        }
    }

    fn next_cycle(&mut self, m: usize, t_m: f64) -> CycleRecord {
        let theta = self.modulator.angle_at(t_m);
        let duty = self.modulator.duty_at(t_m);

        let mut position = [0.0; 3];
        let mut k_used = [None; 3];
        let mut fallback = [false; 3];
        let mut set = |p: Phase, step: PhaseStep| {
            position[p.index()] = step.r;
            k_used[p.index()] = step.k;
            fallback[p.index()] = step.fallback;
        };

        let fs = match self.spec.strategy {
            Strategy::Csvpwm { fs_hz } => {
                for p in Phase::ALL {
                    set(p, plain(position_center(duty[p])));
                }
                fs_hz
            }
            Strategy::RandomPosition { fs_hz } => {
                for p in Phase::ALL {
                    set(p, plain(position_random(duty[p], &mut self.rng)));
                }
                fs_hz
            }
            Strategy::RandomFrequency {
                fs_min_hz,
                fs_max_hz,
            } => {
                let fs = frequency_random(fs_min_hz, fs_max_hz, &mut self.rng);
                for p in Phase::ALL {
                    set(p, plain(position_center(duty[p])));
                }
                fs
            }
            Strategy::SnsRp {
                fs_hz,
                fx_hz,
                pairing,
            } => {
                for p in Phase::ALL {
                    let step = self.chain_step(p, duty[p], |rng, link| {
                        next_position_sns_rp(fx_hz, fs_hz, link.r, link.d, duty[p], pairing, rng)
                            .ok()
                    });
                    set(p, step);
                }
                fs_hz
            }
            Strategy::SnsRfRp {
                fs_min_hz,
                fs_max_hz,
                fx_hz,
                variant,
            } => {
                let fs = match variant {
                    SnsRfRpVariant::PositionFromFrequency => {
                        frequency_random(fs_min_hz, fs_max_hz, &mut self.rng)
                    }
                    SnsRfRpVariant::FrequencyFromPosition => {
                        let (step, fs) =
                            self.reference_frequency(duty.a(), fx_hz, fs_min_hz, fs_max_hz);
                        set(Phase::A, step);
                        fs
                    }
                };
                let follow = match variant {
                    SnsRfRpVariant::PositionFromFrequency => &Phase::ALL[..],
                    SnsRfRpVariant::FrequencyFromPosition => &Phase::ALL[1..],
                };
                for &p in follow {
                    let step = self.chain_step(p, duty[p], |rng, link| {
                        let range = k_range_sns_rf_rp_pos(fx_hz, link.fs, fs, link.r, duty[p])?;
                        let k = range.draw(rng);
                        let r = position_sns_rf_rp(fx_hz, link.fs, fs, link.r, duty[p], k);
                        Some((clamp_position(r, duty[p]), k))
                    });
                    set(p, step);
                }
                fs
            }
            Strategy::FixedPosition {
                fs_min_hz,
                fs_max_hz,
                fx_hz,
                position: pos,
                pairing,
            } => {
                let (k, fs, fell_back) =
                    self.fixed_position_frequency(duty, pos, pairing, fx_hz, fs_min_hz, fs_max_hz);
                for p in Phase::ALL {
                    set(
                        p,
                        PhaseStep {
                            r: pos.position(duty[p]),
                            k: if p == Phase::A { k } else { None },
                            fallback: p == Phase::A && fell_back,
                        },
                    );
                }
                fs
            }
        };

        for p in Phase::ALL {
            let d = duty[p];
            self.chains[p.index()] = if d > 0.0 {
                Chain::Linked(Link {
                    r: position[p.index()],
                    d,
                    fs,
                })
            } else {
                Chain::Broken
            };
        }

        CycleRecord {
            m,
            t_m,
            duty,
            position,
            ts: 1.0 / fs,
            sector: sector_of(theta),
            k_used,
            fallback,
        }
    }

    /// Advances one phase's chain. `solve` returns `(position, k)` when the
    /// cancellation law has an admissible `k`.
    fn chain_step(
        &mut self,
        phase: Phase,
        duty: f64,
        solve: impl FnOnce(&mut SeededRng, Link) -> Option<(f64, i64)>,
    ) -> PhaseStep {
        let i = phase.index();
        if !self.spec.scope.chains(phase) {
            return plain(position_random(duty, &mut self.rng));
        }
        if duty <= 0.0 {
            return plain(position_center(duty));
        }
        match self.chains[i] {
            Chain::Linked(link) => match solve(&mut self.rng, link) {
                Some((r, k)) => PhaseStep {
                    r,
                    k: Some(k),
                    fallback: false,
                },
                None => {
                    self.stats.fallbacks[i] += 1;
                    PhaseStep {
                        r: position_random(duty, &mut self.rng),
                        k: None,
                        fallback: true,
                    }
                }
            },
            Chain::Broken => {
                self.stats.chain_restarts[i] += 1;
                plain(position_random(duty, &mut self.rng))
            }
            Chain::Start => plain(position_random(duty, &mut self.rng)),
        }
    }

    /// Reference phase drives the next frequency (frequency-from-position law).
    fn reference_frequency(
        &mut self,
        duty: f64,
        fx: f64,
        fs_min: f64,
        fs_max: f64,
    ) -> (PhaseStep, f64) {
        let i = Phase::A.index();
        if duty <= 0.0 {
            let fs = frequency_random(fs_min, fs_max, &mut self.rng);
            return (plain(position_center(duty)), fs);
        }
        let r = position_random(duty, &mut self.rng);
        match self.chains[i] {
            Chain::Linked(link) => {
                let solved = k_range_sns_rf_rp_freq(fx, link.fs, link.r, r, duty, fs_min, fs_max)
                    .and_then(|range| {
                        let k = range.draw(&mut self.rng);
                        let fs = freq_sns_rf_rp(fx, link.fs, link.r, r, duty, k);
                        in_band(fs, fs_min, fs_max).ok().map(|fs| (k, fs))
                    });
                match solved {
                    Some((k, fs)) => (
                        PhaseStep {
                            r,
                            k: Some(k),
                            fallback: false,
                        },
                        fs,
                    ),
                    None => {
                        self.stats.fallbacks[i] += 1;
                        let fs = frequency_random(fs_min, fs_max, &mut self.rng);
                        (
                            PhaseStep {
                                r,
                                k: None,
                                fallback: true,
                            },
                            fs,
                        )
                    }
                }
            }
            Chain::Broken => {
                self.stats.chain_restarts[i] += 1;
                (plain(r), frequency_random(fs_min, fs_max, &mut self.rng))
            }
            Chain::Start => (plain(r), frequency_random(fs_min, fs_max, &mut self.rng)),
        }
    }

    /// Reference phase A picks the frequency for a fixed-position law.
    /// Returns `(k, fs, fell_back)`.
    fn fixed_position_frequency(
        &mut self,
        duty: DutyTriple,
        pos: PulsePosition,
        pairing: CrossPairing,
        fx: f64,
        fs_min: f64,
        fs_max: f64,
    ) -> (Option<i64>, f64, bool) {
        let i = Phase::A.index();
        let d = duty.a();
        if d <= 0.0 {
            return (None, frequency_random(fs_min, fs_max, &mut self.rng), false);
        }
        let (law, linked) = match self.chains[i] {
            Chain::Linked(link) => (
                Some(FrequencyLaw::new(pos, pairing, link.fs, link.d, d)),
                true,
            ),
            Chain::Broken => {
                self.stats.chain_restarts[i] += 1;
                (FrequencyLaw::standalone(pos, pairing, d), false)
            }
            Chain::Start => (FrequencyLaw::standalone(pos, pairing, d), false),
        };
        let solved = law.and_then(|law| {
            let k = law.k_range(fx, fs_min, fs_max)?.draw(&mut self.rng);
            in_band(law.frequency(fx, k), fs_min, fs_max)
                .ok()
                .map(|fs| (k, fs))
        });
        match solved {
            Some((k, fs)) => (Some(k), fs, false),
            None => {
                if linked {
                    self.stats.fallbacks[i] += 1;
                }
                (
                    None,
                    frequency_random(fs_min, fs_max, &mut self.rng),
                    linked,
                )
            }
        }
    }
}

fn plain(r: f64) -> PhaseStep {
    PhaseStep {
        r,
        k: None,
        fallback: false,
    }
}
