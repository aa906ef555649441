//! Phase current of a series RL branch driven by a piecewise-constant voltage.

use std::io::Write;

use crate::error::{Error, Result};
use crate::synthesis::{SampledWaveform, StepSignal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadParams {
    r_ohm: f64,
    l_h: f64,
    i0_a: f64,
}

impl LoadParams {
    pub fn new(r_ohm: f64, l_h: f64, i0_a: f64) -> Result<Self> {
        if !(r_ohm > 0.0 && r_ohm.is_finite()) {
            return Err(Error::config(format!(
                "load resistance must be > 0, got {r_ohm}"
            )));
        }
        if !(l_h > 0.0 && l_h.is_finite()) {
            return Err(Error::config(format!(
                "load inductance must be > 0, got {l_h}"
            )));
        }
        if !i0_a.is_finite() {
            return Err(Error::config("initial current must be finite"));
        }
        Ok(Self { r_ohm, l_h, i0_a })
    }

    pub fn r_ohm(&self) -> f64 {
        self.r_ohm
    }

    pub fn l_h(&self) -> f64 {
        self.l_h
    }

    pub fn i0_a(&self) -> f64 {
        self.i0_a
    }

    /// Time constant `L / R`.
    pub fn tau_s(&self) -> f64 {
        self.l_h / self.r_ohm
    }

    /// Current after `dt` at constant voltage `u`, starting from `i`.
    pub fn step(&self, i: f64, u: f64, dt: f64) -> f64 {
        let i_inf = u / self.r_ohm;
        i_inf + (i - i_inf) * (-dt / self.tau_s()).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    start_s: f64,
    end_s: f64,
    voltage: f64,
    i_start: f64,
}

/// Exact current over the span of the driving voltage.
#[derive(Debug, Clone, PartialEq)]
pub struct CurrentTrace {
    load: LoadParams,
    pieces: Vec<Piece>,
}

impl CurrentTrace {
    /// `(time, current)` at every segment boundary, including both span ends.
    pub fn boundaries(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self.pieces.iter().map(|p| (p.start_s, p.i_start)).collect();
        if let Some(p) = self.pieces.last() {
            out.push((
                p.end_s,
                self.load.step(p.i_start, p.voltage, p.end_s - p.start_s),
            ));
        }
        out
    }

    pub fn start_s(&self) -> f64 {
        self.pieces.first().map_or(0.0, |p| p.start_s)
    }

    pub fn end_s(&self) -> f64 {
        self.pieces.last().map_or(0.0, |p| p.end_s)
    }

    /// Current at `t`; clamped to the span ends outside it.
    pub fn value_at(&self, t: f64) -> f64 {
        if self.pieces.is_empty() {
            return self.load.i0_a;
        }
        let i = self.pieces.partition_point(|p| p.start_s <= t).max(1) - 1;
        let p = &self.pieces[i];
        let dt = (t.min(p.end_s) - p.start_s).max(0.0);
        self.load.step(p.i_start, p.voltage, dt)
    }

    /// Uniform samples `start + n / rate`, `n < count`.
    pub fn sample(&self, rate_hz: f64, start_s: f64, count: usize) -> SampledWaveform {
        let mut samples = Vec::with_capacity(count);
        let mut i = 0;
        for n in 0..count {
            let t = start_s + n as f64 / rate_hz;
            while i + 1 < self.pieces.len() && self.pieces[i + 1].start_s <= t {
                i += 1;
            }
            samples.push(match self.pieces.get(i) {
                Some(p) if t >= p.start_s => {
                    self.load
                        .step(p.i_start, p.voltage, t.min(p.end_s) - p.start_s)
                }
                _ => self.value_at(t),
            });
        }
        SampledWaveform {
            rate_hz,
            start_s,
            samples,
        }
    }
}

/// Solves `L di/dt + R i = u(t)` segment by segment with the exact exponential.
pub fn rl_current(u: &StepSignal, load: &LoadParams) -> CurrentTrace {
    let mut i = load.i0_a;
    let pieces = u
        .segments()
        .into_iter()
        .map(|(start_s, end_s, voltage)| {
            let p = Piece {
                start_s,
                end_s,
                voltage,
                i_start: i,
            };
            i = load.step(i, voltage, end_s - start_s);
            p
        })
        .collect();
    CurrentTrace {
        load: *load,
        pieces,
    }
}

pub fn write_current_csv<W: Write>(out: &mut W, current: &SampledWaveform) -> std::io::Result<()> {
    writeln!(out, "# sns-svpwm current v1")?;
    writeln!(out, "time_s,i_a_amps")?;
    for (n, i) in current.samples.iter().enumerate() {
        writeln!(out, "{:.9},{:.9}", current.time_of(n), i)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn load() -> LoadParams {
        LoadParams::new(1.02, 0.59e-3, 0.0).unwrap()
    }

    #[test]
    fn rejects_nonpositive_elements() {
        assert!(LoadParams::new(0.0, 1e-3, 0.0).is_err());
        assert!(LoadParams::new(1.0, -1e-3, 0.0).is_err());
        assert!(LoadParams::new(1.0, 1e-3, f64::NAN).is_err());
    }

    #[test]
    fn step_response_at_tau() {
        let l = load();
        let u = StepSignal::constant(24.0, 0.0, 5e-3);
        let tr = rl_current(&u, &l);
        assert_abs_diff_eq!(l.tau_s(), 0.5784e-3, epsilon = 1e-7);
        let i = tr.value_at(l.tau_s());
        assert_relative_eq!(
            i,
            24.0 / 1.02 * (1.0 - (-1.0f64).exp()),
            max_relative = 1e-12
        );
        assert_abs_diff_eq!(i, 14.87, epsilon = 0.005);
    }

    #[test]
    fn zero_drive_stays_zero() {
        let tr = rl_current(&StepSignal::constant(0.0, 0.0, 1e-2), &load());
        assert!(tr.sample(1e5, 0.0, 1000).samples.iter().all(|&i| i == 0.0));
    }

    #[test]
    fn approaches_asymptote() {
        let tr = rl_current(&StepSignal::constant(24.0, 0.0, 0.1), &load());
        assert_relative_eq!(tr.value_at(0.1), 24.0 / 1.02, max_relative = 1e-12);
    }

    fn square(period: f64, periods: usize, u: f64) -> StepSignal {
        let mut steps = Vec::new();
        for p in 0..periods {
            let t0 = p as f64 * period;
            steps.push((t0, u));
            steps.push((t0 + 0.3 * period, -u));
        }
        StepSignal {
            start_s: 0.0,
            end_s: periods as f64 * period,
            initial: 0.0,
            steps,
        }
    }

    #[test]
    fn continuous_at_boundaries() {
        let l = load();
        let tr = rl_current(&square(4e-4, 20, 12.0), &l);
        for w in tr.pieces.windows(2) {
            let end = l.step(w[0].i_start, w[0].voltage, w[0].end_s - w[0].start_s);
            assert_eq!(end, w[1].i_start);
        }
        let b = tr.boundaries();
        assert_eq!(b.len(), tr.pieces.len() + 1);
    }

    #[test]
    fn positive_drive_is_monotone() {
        let mut steps = vec![(0.0, 5.0), (1e-3, 20.0), (2e-3, 1.0)];
        steps.push((3e-3, 0.0));
        let u = StepSignal {
            start_s: 0.0,
            end_s: 4e-3,
            initial: 0.0,
            steps,
        };
        let tr = rl_current(&u, &load());
        let s = tr.sample(1e6, 0.0, 4000).samples;
        assert!(s.iter().all(|&i| i >= 0.0));
        for seg in s.chunks(1000) {
            let rising = seg[1] >= seg[0];
            assert!(seg
                .windows(2)
                .all(|w| (w[1] >= w[0]) == rising || w[1] == w[0]));
        }
    }

    fn rk4(u: &StepSignal, l: &LoadParams, h: f64) -> Vec<(f64, f64)> {
        let f = |i: f64, v: f64| (v - l.r_ohm() * i) / l.l_h();
        let mut i = l.i0_a();
        let mut out = vec![(u.start_s, i)];
        for (a, b, v) in u.segments() {
            let n = ((b - a) / h).ceil() as usize;
            let dt = (b - a) / n as f64;
            for _ in 0..n {
                let k1 = f(i, v);
                let k2 = f(i + 0.5 * dt * k1, v);
                let k3 = f(i + 0.5 * dt * k2, v);
                let k4 = f(i + dt * k3, v);
                i += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            out.push((b, i));
        }
        out
    }

    #[test]
    fn matches_rk4_integrator() {
        let l = LoadParams::new(1.02, 0.59e-3, 0.5).unwrap();
        let u = square(3.7e-4, 27, 24.0);
        assert!(u.end_s >= 9.9e-3);
        let tr = rl_current(&u, &l);
        let exact = tr.boundaries();
        let numeric = rk4(&u, &l, 1e-8);
        assert_eq!(exact.len(), numeric.len());
        let scale = exact.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
        for (e, n) in exact.iter().zip(&numeric) {
            assert_eq!(e.0, n.0);
            assert!((e.1 - n.1).abs() / scale < 1e-6, "{} vs {}", e.1, n.1);
        }
    }

    #[test]
    fn periodic_drive_converges_geometrically() {
        let l = LoadParams::new(0.05, 0.59e-3, 0.0).unwrap();
        let period = 2e-3;
        let tr = rl_current(&square(period, 12, 10.0), &l);
        let per = 400;
        let s = tr.sample(per as f64 / period, 0.0, 12 * per).samples;
        let diffs: Vec<f64> = (0..11)
            .map(|p| {
                let a = &s[p * per..(p + 1) * per];
                let b = &s[(p + 1) * per..(p + 2) * per];
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect();
        let expected = (-l.r_ohm() * period / l.l_h()).exp();
        for w in diffs.windows(2) {
            assert_relative_eq!(w[1] / w[0], expected, max_relative = 1e-6);
        }
    }

    #[test]
    fn csv_layout() {
        let tr = rl_current(&StepSignal::constant(1.0, 0.0, 1e-3), &load());
        let mut buf = Vec::new();
        write_current_csv(&mut buf, &tr.sample(1e4, 0.0, 3)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# sns-svpwm current v1");
        assert_eq!(lines[1], "time_s,i_a_amps");
        assert_eq!(lines.len(), 5);
    }
}
