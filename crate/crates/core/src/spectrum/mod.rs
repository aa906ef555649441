//! Spectra of pulse trains and sampled waveforms.
//!
//! Two independent routes to the same quantity:
//!
//! * [`analytic_transform`] sums the closed-form Fourier transform of every
//!   rectangular pulse (exact edge times, no sampling);
//! * [`welch_psd`] estimates the PSD of a sampled waveform with averaged,
//!   windowed periodograms.
//!
//! Notch depth is always a baseline-minus-test difference in dB, so the
//! absolute reference of either route never matters.

mod analytic;
mod metrics;
mod welch;

use std::io::Write;

use rustfft::num_complex::Complex64;

pub use analytic::{analytic_psd_db, analytic_spectrum, analytic_transform, cancellation_residual};
pub use metrics::{
    band_flatness, band_peak_db, band_stats, dominant_peaks, notch_report, pearson, BandStats,
    Flatness, NotchReport, NOTCH_THRESHOLD_DB,
};
pub use welch::{welch_psd, WelchConfig, Window};

/// Lowest reported PSD level.
pub const PSD_FLOOR_DB: f64 = -200.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumValues {
    /// Raw transform in volt-seconds (or level-seconds).
    Complex(Vec<Complex64>),
    /// One-sided PSD in dB re 1 unit²/Hz.
    PsdDb(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMeta {
    pub resolution_hz: f64,
    pub window: Option<Window>,
    pub segment_len: Option<usize>,
    pub overlap: Option<f64>,
    pub segments: usize,
}

/// Values on a uniform, strictly increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub freqs_hz: Vec<f64>,
    pub values: SpectrumValues,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.freqs_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs_hz.is_empty()
    }

    pub fn psd_db(&self) -> Option<&[f64]> {
        match &self.values {
            SpectrumValues::PsdDb(v) => Some(v),
            SpectrumValues::Complex(_) => None,
        }
    }

    /// PSD in dB; complex spectra are converted with `|X|^2` (no scaling).
    pub fn db_values(&self) -> Vec<f64> {
        match &self.values {
            SpectrumValues::PsdDb(v) => v.clone(),
            SpectrumValues::Complex(v) => v.iter().map(|x| to_db(x.norm_sqr())).collect(),
        }
    }

    /// Index of the bin closest to `f`.
    pub fn nearest_bin(&self, f: f64) -> usize {
        let i = self.freqs_hz.partition_point(|&x| x < f);
        if i == 0 {
            0
        } else if i >= self.freqs_hz.len() {
            self.freqs_hz.len() - 1
        } else if (self.freqs_hz[i] - f) < (f - self.freqs_hz[i - 1]) {
            i
        } else {
            i - 1
        }
    }

    /// Bin indices with frequency in `[lo, hi]`.
    pub fn bins_in(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let a = self.freqs_hz.partition_point(|&x| x < lo);
        let b = self.freqs_hz.partition_point(|&x| x <= hi);
        a..b
    }

    pub fn same_grid(&self, other: &Spectrum) -> bool {
        self.len() == other.len()
            && self
                .freqs_hz
                .iter()
                .zip(&other.freqs_hz)
                .all(|(a, b)| (a - b).abs() <= 1e-9 * a.abs().max(1.0))
    }

    /// `freq_hz,psd_db_hz` or `freq_hz,re,im` rows after a versioned comment line.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        match &self.values {
            SpectrumValues::PsdDb(v) => {
                writeln!(out, "# sns-svpwm psd v1")?;
                writeln!(out, "freq_hz,psd_db_hz")?;
                for (f, p) in self.freqs_hz.iter().zip(v) {
                    writeln!(out, "{f:.6},{p:.6}")?;
                }
            }
            SpectrumValues::Complex(v) => {
                writeln!(out, "# sns-svpwm transform v1")?;
                writeln!(out, "freq_hz,re,im")?;
                for (f, x) in self.freqs_hz.iter().zip(v) {
                    writeln!(out, "{f:.6},{:e},{:e}", x.re, x.im)?;
                }
            }
        }
        Ok(())
    }
}

/// `10 log10(p)` floored at [`PSD_FLOOR_DB`].
pub fn to_db(p: f64) -> f64 {
    if p > 0.0 {
        (10.0 * p.log10()).max(PSD_FLOOR_DB)
    } else {
        PSD_FLOOR_DB
    }
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Writes a test/baseline PSD pair on a shared grid.
pub fn write_overlay_csv<W: Write>(
    out: &mut W,
    test: &Spectrum,
    baseline: &Spectrum,
) -> crate::Result<()> {
    if !test.same_grid(baseline) {
        return Err(crate::Error::GridMismatch);
    }
    let (a, b) = (test.db_values(), baseline.db_values());
    let io = |e| crate::Error::io("psd overlay", e);
    writeln!(out, "# sns-svpwm psd v1").map_err(io)?;
    writeln!(out, "freq_hz,psd_db_hz,psd_baseline_db_hz").map_err(io)?;
    for ((f, x), y) in test.freqs_hz.iter().zip(&a).zip(&b) {
        writeln!(out, "{f:.6},{x:.6},{y:.6}").map_err(io)?;
    }
    Ok(())
}
