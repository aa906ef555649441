use std::fmt;

use super::Spectrum;
use crate::error::{Error, Result};

/// Baseline-minus-test level that counts as inside the notch.
pub const NOTCH_THRESHOLD_DB: f64 = 6.0;

#[derive(Debug, Clone, PartialEq)]
pub struct NotchReport {
    pub fx_hz: f64,
    pub half_band_hz: f64,
    /// Largest baseline-minus-test difference inside `fx ± half_band`.
    pub max_reduction_db: f64,
    pub mean_reduction_db: f64,
    /// Span of the contiguous run of bins around `fx` whose reduction reaches
    /// [`NOTCH_THRESHOLD_DB`]; zero when the bin at `fx` itself misses it.
    pub notch_width_hz: f64,
    pub fallbacks: u64,
    pub chain_restarts: u64,
}

impl fmt::Display for NotchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fx_hz = {}", self.fx_hz)?;
        writeln!(f, "half_band_hz = {}", self.half_band_hz)?;
        writeln!(f, "max_reduction_db = {:.3}", self.max_reduction_db)?;
        writeln!(f, "mean_reduction_db = {:.3}", self.mean_reduction_db)?;
        writeln!(f, "notch_width_hz = {:.3}", self.notch_width_hz)?;
        writeln!(f, "fallbacks = {}", self.fallbacks)?;
        write!(f, "chain_restarts = {}", self.chain_restarts)
    }
}

pub fn notch_report(
    test: &Spectrum,
    baseline: &Spectrum,
    fx_hz: f64,
    half_band_hz: f64,
) -> Result<NotchReport> {
    if !test.same_grid(baseline) {
        return Err(Error::GridMismatch);
    }
    let (lo, hi) = (fx_hz - half_band_hz, fx_hz + half_band_hz);
    let range = test.bins_in(lo, hi);
    if test.is_empty()
        || range.is_empty()
        || lo < test.freqs_hz[0]
        || hi > test.freqs_hz[test.len() - 1]
    {
        return Err(Error::config(format!(
            "notch band [{lo}, {hi}] Hz lies outside the spectrum grid"
        )));
    }
    let reduction: Vec<f64> = baseline
        .db_values()
        .iter()
        .zip(test.db_values())
        .map(|(b, t)| b - t)
        .collect();
    let band = &reduction[range];
    let max_reduction_db = band.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean_reduction_db = band.iter().sum::<f64>() / band.len() as f64;

    let centre = test.nearest_bin(fx_hz);
    let inside = |i: usize| reduction[i] >= NOTCH_THRESHOLD_DB;
    let notch_width_hz = if inside(centre) {
        let mut a = centre;
        while a > 0 && inside(a - 1) {
            a -= 1;
        }
        let mut b = centre;
        while b + 1 < reduction.len() && inside(b + 1) {
            b += 1;
        }
        (b - a + 1) as f64 * test.meta.resolution_hz
    } else {
        0.0
    };
    Ok(NotchReport {
        fx_hz,
        half_band_hz,
        max_reduction_db,
        mean_reduction_db,
        notch_width_hz,
        fallbacks: 0,
        chain_restarts: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandStats {
    pub peak_db: f64,
    pub mean_db: f64,
    pub median_db: f64,
}

/// Statistics of the dB values in `[lo, hi]`, or `None` for an empty band.
pub fn band_stats(s: &Spectrum, lo: f64, hi: f64) -> Option<BandStats> {
    let mut v: Vec<f64> = s.db_values()[s.bins_in(lo, hi)].to_vec();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let median_db = if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    };
    Some(BandStats {
        peak_db: v[n - 1],
        mean_db: v.iter().sum::<f64>() / n as f64,
        median_db,
    })
}

pub fn band_peak_db(s: &Spectrum, lo: f64, hi: f64) -> Option<f64> {
    band_stats(s, lo, hi).map(|b| b.peak_db)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flatness {
    pub center_hz: f64,
    /// Standard deviation of the dB values.
    pub std_db: f64,
    /// Highest dB value minus the mean of the dB values.
    pub peak_to_mean_db: f64,
}

pub fn band_flatness(s: &Spectrum, center_hz: f64, half_width_hz: f64) -> Option<Flatness> {
    let db = &s.db_values()[s.bins_in(center_hz - half_width_hz, center_hz + half_width_hz)];
    if db.is_empty() {
        return None;
    }
    let n = db.len() as f64;
    let mean_db = db.iter().sum::<f64>() / n;
    let std_db = (db.iter().map(|x| (x - mean_db).powi(2)).sum::<f64>() / n).sqrt();
    let peak = db.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Some(Flatness {
        center_hz,
        std_db,
        peak_to_mean_db: peak - mean_db,
    })
}

/// Bins of the `count` largest local maxima in `[lo, hi]`, largest first.
pub fn dominant_peaks(s: &Spectrum, lo: f64, hi: f64, count: usize) -> Vec<usize> {
    let db = s.db_values();
    let range = s.bins_in(lo, hi);
    let mut peaks: Vec<usize> = range
        .filter(|&i| {
            let left = i == 0 || db[i] > db[i - 1];
            let right = i + 1 == db.len() || db[i] >= db[i + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| db[b].total_cmp(&db[a]));
    peaks.truncate(count);
    peaks
}

/// Pearson correlation coefficient; `NaN` when either input is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "pearson inputs differ in length");
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    sab / (saa * sbb).sqrt()
}
