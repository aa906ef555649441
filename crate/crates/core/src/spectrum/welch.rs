use std::f64::consts::TAU;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::{to_db, Spectrum, SpectrumMeta, SpectrumValues};
use crate::error::{Error, Result};
use crate::synthesis::SampledWaveform;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    /// Periodic Hann.
    Hann,
    Rectangular,
}

impl Window {
    pub fn name(self) -> &'static str {
        match self {
            Window::Hann => "hann",
            Window::Rectangular => "rectangular",
        }
    }

    pub fn coefficients(self, len: usize) -> Vec<f64> {
        match self {
            Window::Hann => (0..len)
                .map(|n| 0.5 - 0.5 * (TAU * n as f64 / len as f64).cos())
                .collect(),
            Window::Rectangular => vec![1.0; len],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WelchConfig {
    pub segment_len: usize,
    /// Fraction of a segment shared with the next one, in `[0, 1)`.
    pub overlap: f64,
    pub window: Window,
}

impl Default for WelchConfig {
    fn default() -> Self {
        WelchConfig {
            segment_len: 1 << 16,
            overlap: 0.5,
            window: Window::Hann,
        }
    }
}

impl WelchConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.segment_len.is_power_of_two() || self.segment_len < 2 {
            return Err(Error::config(format!(
                "psd segment length must be a power of two >= 2, got {}",
                self.segment_len
            )));
        }
        if !(0.0..1.0).contains(&self.overlap) {
            return Err(Error::config(format!(
                "psd overlap must lie in [0, 1), got {}",
                self.overlap
            )));
        }
        Ok(())
    }

    fn hop(&self) -> usize {
        ((self.segment_len as f64 * (1.0 - self.overlap)).round() as usize).max(1)
    }
}

/// One-sided Welch PSD in dB re 1 unit²/Hz.
///
/// Each segment's periodogram is `|FFT(w x)|^2 / (rate Σ w^2)`, doubled
/// everywhere except DC and Nyquist, then averaged over segments.
pub fn welch_psd(wave: &SampledWaveform, cfg: &WelchConfig) -> Result<Spectrum> {
    cfg.validate()?;
    let n = cfg.segment_len;
    if wave.len() < n {
        return Err(Error::TooShort {
            samples: wave.len(),
            segment_len: n,
        });
    }
    let hop = cfg.hop();
    let window = cfg.window.coefficients(n);
    let norm = wave.rate_hz * window.iter().map(|w| w * w).sum::<f64>();
    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut buf = vec![Complex64::default(); n];
    let mut acc = vec![0.0; n / 2 + 1];
    let mut segments = 0;
    let mut start = 0;
    while start + n <= wave.len() {
        for ((b, x), w) in buf
            .iter_mut()
            .zip(&wave.samples[start..start + n])
            .zip(&window)
        {
            *b = Complex64::new(x * w, 0.0);
        }
        fft.process(&mut buf);
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += b.norm_sqr();
        }
        segments += 1;
        start += hop;
    }
    let last = acc.len() - 1;
    let psd_db = acc
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let one_sided = if k == 0 || k == last { 1.0 } else { 2.0 };
            to_db(one_sided * p / (norm * segments as f64))
        })
        .collect();
    let df = wave.rate_hz / n as f64;
    Ok(Spectrum {
        freqs_hz: (0..=n / 2).map(|k| k as f64 * df).collect(),
        values: SpectrumValues::PsdDb(psd_db),
        meta: SpectrumMeta {
            resolution_hz: df,
            window: Some(cfg.window),
            segment_len: Some(n),
            overlap: Some(cfg.overlap),
            segments,
        },
    })
}
