//! Pulse trains, inverter voltages and uniform sampling.
//!
//! Edge times stay at full precision in [`PulseTrain`] and [`StepSignal`];
//! quantization to the sample grid happens only in [`sample`].

use std::io::Write;

use crate::error::{Error, Result};
use crate::modulator::Phase;
use crate::scheduler::CycleRecord;

/// Adjacent falling/rising edges closer than this merge into one high interval.
pub const EDGE_MERGE_S: f64 = 1e-12;

const BOUNDS_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub time_s: f64,
    /// Level after the edge: 1 = upper switch on.
    pub level: u8,
}

/// Switching function of one leg. Starts low; levels alternate.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseTrain {
    pub phase: Phase,
    pub edges: Vec<Edge>,
    pub duration_s: f64,
}

impl PulseTrain {
    pub fn level_at(&self, t: f64) -> u8 {
        match self.edges.partition_point(|e| e.time_s <= t) {
            0 => 0,
            i => self.edges[i - 1].level,
        }
    }

    /// Total seconds spent high.
    pub fn high_time(&self) -> f64 {
        self.edges
            .chunks(2)
            .map(|pair| match pair {
                [rise, fall] => fall.time_s - rise.time_s,
                [rise] => self.duration_s - rise.time_s,
                _ => 0.0,
            })
            .sum()
    }

    pub fn to_signal(&self) -> StepSignal {
        StepSignal {
            start_s: 0.0,
            end_s: self.duration_s,
            initial: 0.0,
            steps: self
                .edges
                .iter()
                .map(|e| (e.time_s, e.level as f64))
                .collect(),
        }
    }
}

/// Builds the pulse train of one phase from contiguous cycle records.
pub fn pulse_train(records: &[CycleRecord], phase: Phase) -> Result<PulseTrain> {
    let mut edges: Vec<Edge> = Vec::with_capacity(records.len() * 2);
    for (i, rec) in records.iter().enumerate() {
        validate_record(rec, phase)?;
        if let Some(prev) = i.checked_sub(1).map(|j| &records[j]) {
            let gap = rec.t_m - prev.end();
            if gap.abs() > BOUNDS_SLACK * prev.ts {
                return Err(Error::MalformedRecords(format!(
                    "cycle {} starts {gap:e} s away from the end of cycle {}",
                    rec.m, prev.m
                )));
            }
        }
        let d = rec.duty(phase);
        if d <= 0.0 {
            continue;
        }
        let rise = rec.rise_time(phase);
        let fall = rec.fall_time(phase);
        if fall <= rise {
            continue;
        }
        match edges.last() {
            Some(last) if last.level == 0 && rise - last.time_s <= EDGE_MERGE_S => {
                edges.pop();
            }
            _ => edges.push(Edge {
                time_s: rise,
                level: 1,
            }),
        }
        edges.push(Edge {
            time_s: fall,
            level: 0,
        });
    }
    Ok(PulseTrain {
        phase,
        edges,
        duration_s: records.last().map_or(0.0, |r| r.end()),
    })
}

fn validate_record(rec: &CycleRecord, phase: Phase) -> Result<()> {
    let d = rec.duty(phase);
    let r = rec.position(phase);
    if !(rec.ts > 0.0 && rec.ts.is_finite()) {
        return Err(Error::MalformedRecords(format!(
            "cycle {}: non-positive period {}",
            rec.m, rec.ts
        )));
    }
    if !(0.0..=1.0).contains(&d) || r < -BOUNDS_SLACK || r + d > 1.0 + BOUNDS_SLACK {
        return Err(Error::MalformedRecords(format!(
            "cycle {} phase {phase}: position {r} outside [0, 1 - {d}]",
            rec.m
        )));
    }
    Ok(())
}

/// Phase voltages of a star-connected balanced load.
pub fn phase_voltages(xa: u8, xb: u8, xc: u8, u_dc: f64) -> [f64; 3] {
    let (a, b, c) = (xa as f64, xb as f64, xc as f64);
    [
        u_dc * (2.0 * a - b - c) / 3.0,
        u_dc * (2.0 * b - a - c) / 3.0,
        u_dc * (2.0 * c - a - b) / 3.0,
    ]
}

pub fn line_voltage(xa: u8, xb: u8, u_dc: f64) -> f64 {
    u_dc * (xa as f64 - xb as f64)
}

/// Piecewise-constant signal on `[start_s, end_s)`.
///
/// `steps` holds `(time, value)` changes in increasing time order; the value
/// before the first step is `initial`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepSignal {
    pub start_s: f64,
    pub end_s: f64,
    pub initial: f64,
    pub steps: Vec<(f64, f64)>,
}

impl StepSignal {
    pub fn constant(value: f64, start_s: f64, end_s: f64) -> Self {
        Self {
            start_s,
            end_s,
            initial: value,
            steps: Vec::new(),
        }
    }

    pub fn value_at(&self, t: f64) -> f64 {
        match self.steps.partition_point(|&(ts, _)| ts <= t) {
            0 => self.initial,
            i => self.steps[i - 1].1,
        }
    }

    /// Constant-value segments `(start, end, value)` covering the signal span.
    pub fn segments(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut t = self.start_s;
        let mut v = self.initial;
        for &(ts, nv) in &self.steps {
            if ts > t {
                out.push((t, ts.min(self.end_s), v));
                t = ts;
            }
            v = nv;
            if t >= self.end_s {
                break;
            }
        }
        if t < self.end_s {
            out.push((t, self.end_s, v));
        }
        out
    }

    /// Integral over the span.
    pub fn integral(&self) -> f64 {
        self.segments().iter().map(|(a, b, v)| (b - a) * v).sum()
    }
}

/// Combines several pulse trains into one step signal through `f(levels)`.
fn combine(trains: &[&PulseTrain], f: impl Fn(&[u8]) -> f64) -> StepSignal {
    let mut events: Vec<(f64, usize, u8)> = trains
        .iter()
        .enumerate()
        .flat_map(|(i, tr)| tr.edges.iter().map(move |e| (e.time_s, i, e.level)))
        .collect();
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut levels = vec![0u8; trains.len()];
    let initial = f(&levels);
    let mut current = initial;
    let mut steps = Vec::new();
    let mut i = 0;
    while i < events.len() {
        let t = events[i].0;
        while i < events.len() && events[i].0 == t {
            levels[events[i].1] = events[i].2;
            i += 1;
        }
        let v = f(&levels);
        if v != current {
            steps.push((t, v));
            current = v;
        }
    }
    StepSignal {
        start_s: 0.0,
        end_s: trains.iter().map(|t| t.duration_s).fold(0.0, f64::max),
        initial,
        steps,
    }
}

/// Phase-to-neutral voltage of `phase` from all three switching functions.
pub fn phase_voltage_signal(trains: &[PulseTrain; 3], phase: Phase, u_dc: f64) -> StepSignal {
    let refs: Vec<&PulseTrain> = trains.iter().collect();
    combine(&refs, |x| {
        phase_voltages(x[0], x[1], x[2], u_dc)[phase.index()]
    })
}

/// Line voltage `u_a - u_b` from the two switching functions.
pub fn line_voltage_signal(a: &PulseTrain, b: &PulseTrain, u_dc: f64) -> StepSignal {
    combine(&[a, b], |x| line_voltage(x[0], x[1], u_dc))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledWaveform {
    pub rate_hz: f64,
    pub start_s: f64,
    pub samples: Vec<f64>,
}

impl SampledWaveform {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time_of(&self, n: usize) -> f64 {
        self.start_s + n as f64 / self.rate_hz
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            0.0
        } else {
            self.samples.iter().sum::<f64>() / self.samples.len() as f64
        }
    }
}

/// Minimum oversampling of the highest switching frequency.
pub const MIN_OVERSAMPLING: f64 = 100.0;

/// Sample-and-hold of `signal` over its whole span.
///
/// Sample `n` sits at `start + n / rate` and takes the value in force at that
/// instant, so an edge between two samples shows up at the next one.
pub fn sample(signal: &StepSignal, rate_hz: f64, max_switching_hz: f64) -> Result<SampledWaveform> {
    let required = MIN_OVERSAMPLING * max_switching_hz;
    if rate_hz.is_nan() || rate_hz < required {
        return Err(Error::RateTooLow {
            rate_hz,
            required_hz: required,
        });
    }
    let count = ((signal.end_s - signal.start_s) * rate_hz).round().max(0.0) as usize;
    Ok(sample_span(signal, rate_hz, signal.start_s, count))
}

/// Sample-and-hold over an explicit window; instants past the signal end read
/// the last value, instants before the start read `initial`.
pub fn sample_span(
    signal: &StepSignal,
    rate_hz: f64,
    start_s: f64,
    count: usize,
) -> SampledWaveform {
    let mut samples = Vec::with_capacity(count);
    let first = signal.steps.partition_point(|&(t, _)| t <= start_s);
    let mut value = match first {
        0 => signal.initial,
        i => signal.steps[i - 1].1,
    };
    for &(t, v) in &signal.steps[first..] {
        let idx = ((t - start_s) * rate_hz).ceil();
        let idx = if idx < 0.0 {
            0
        } else {
            (idx as usize).min(count)
        };
        if idx > samples.len() {
            samples.resize(idx, value);
        }
        value = v;
        if idx >= count {
            break;
        }
    }
    samples.resize(count, value);
    SampledWaveform {
        rate_hz,
        start_s,
        samples,
    }
}

/// Writes `time_s, x_a, x_b, x_c, u_ab_v` rows sampled on `[start_s, start_s + count / rate)`.
pub fn write_waveform_csv<W: Write>(
    out: &mut W,
    trains: &[PulseTrain; 3],
    u_dc: f64,
    rate_hz: f64,
    start_s: f64,
    count: usize,
) -> std::io::Result<()> {
    let levels: Vec<SampledWaveform> = trains
        .iter()
        .map(|t| sample_span(&t.to_signal(), rate_hz, start_s, count))
        .collect();
    writeln!(out, "# sns-svpwm waveform v1")?;
    writeln!(out, "time_s,x_a,x_b,x_c,u_ab_v")?;
    for n in 0..count {
        let x: Vec<u8> = levels.iter().map(|w| w.samples[n] as u8).collect();
        writeln!(
            out,
            "{:.9},{},{},{},{}",
            start_s + n as f64 / rate_hz,
            x[0],
            x[1],
            x[2],
            line_voltage(x[0], x[1], u_dc)
        )?;
    }
    Ok(())
}
