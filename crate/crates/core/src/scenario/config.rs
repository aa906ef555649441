use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::circuit::LoadParams;
use crate::error::{Error, Result};
use crate::modulator::ModulatorConfig;
use crate::scheduler::{
    ChainScope, CrossPairing, PulsePosition, SnsRfRpVariant, Strategy, StrategySpec,
};
use crate::spectrum::{WelchConfig, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    Csvpwm,
    Rp,
    Rf,
    SnsRp,
    SnsRfRp,
    FixedPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingKey {
    RiseToNextFall,
    FallToNextRise,
}

impl From<PairingKey> for CrossPairing {
    fn from(k: PairingKey) -> Self {
        match k {
            PairingKey::RiseToNextFall => CrossPairing::RiseToNextFall,
            PairingKey::FallToNextRise => CrossPairing::FallToNextRise,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantKey {
    FrequencyFromPosition,
    PositionFromFrequency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionKey {
    Front,
    Center,
    Back,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScopeKey {
    AllPhases,
    ReferencePhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKey {
    Hann,
    Rectangular,
}

/// Flat key-value run description; every key is optional and unknown keys
/// are rejected.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub strategy: StrategyKind,
    pub fs_hz: f64,
    pub fs_min_hz: f64,
    pub fs_max_hz: f64,
    /// Null target of SNS strategies and centre of the reported notch band.
    pub fx_hz: f64,
    pub sns_rp_variant: PairingKey,
    pub sns_rf_rp_variant: VariantKey,
    pub fixed_position: PositionKey,
    pub table2_method: PairingKey,
    pub chain_scope: ScopeKey,
    pub m_index: f64,
    pub f1_hz: f64,
    pub u_dc_v: f64,
    pub duration_s: f64,
    pub seed: u64,
    pub sample_rate_hz: f64,
    pub psd_segment_len: usize,
    pub psd_overlap: f64,
    pub psd_window: WindowKey,
    pub half_band_hz: f64,
    pub load_r_ohm: f64,
    pub load_l_h: f64,
    /// Length of the tail of the run written to waveform.csv and current.csv.
    pub export_window_s: f64,
    pub output_dir: PathBuf,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            strategy: StrategyKind::SnsRp,
            fs_hz: 2500.0,
            fs_min_hz: 1500.0,
            fs_max_hz: 3500.0,
            fx_hz: 7000.0,
            sns_rp_variant: PairingKey::RiseToNextFall,
            sns_rf_rp_variant: VariantKey::PositionFromFrequency,
            fixed_position: PositionKey::Center,
            table2_method: PairingKey::RiseToNextFall,
            chain_scope: ScopeKey::AllPhases,
            m_index: 0.7,
            f1_hz: 50.0,
            u_dc_v: 24.0,
            duration_s: 2.0,
            seed: 1,
            sample_rate_hz: 1e6,
            psd_segment_len: 1 << 16,
            psd_overlap: 0.5,
            psd_window: WindowKey::Hann,
            half_band_hz: 500.0,
            load_r_ohm: 1.02,
            load_l_h: 0.59e-3,
            export_window_s: 0.02,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::Config(msg) => Error::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn strategy(&self) -> Strategy {
        match self.strategy {
            StrategyKind::Csvpwm => Strategy::Csvpwm { fs_hz: self.fs_hz },
            StrategyKind::Rp => Strategy::RandomPosition { fs_hz: self.fs_hz },
            StrategyKind::Rf => Strategy::RandomFrequency {
                fs_min_hz: self.fs_min_hz,
                fs_max_hz: self.fs_max_hz,
            },
            StrategyKind::SnsRp => Strategy::SnsRp {
                fs_hz: self.fs_hz,
                fx_hz: self.fx_hz,
                pairing: self.sns_rp_variant.into(),
            },
            StrategyKind::SnsRfRp => Strategy::SnsRfRp {
                fs_min_hz: self.fs_min_hz,
                fs_max_hz: self.fs_max_hz,
                fx_hz: self.fx_hz,
                variant: match self.sns_rf_rp_variant {
                    VariantKey::FrequencyFromPosition => SnsRfRpVariant::FrequencyFromPosition,
                    VariantKey::PositionFromFrequency => SnsRfRpVariant::PositionFromFrequency,
                },
            },
            StrategyKind::FixedPosition => Strategy::FixedPosition {
                fs_min_hz: self.fs_min_hz,
                fs_max_hz: self.fs_max_hz,
                fx_hz: self.fx_hz,
                position: match self.fixed_position {
                    PositionKey::Front => PulsePosition::Front,
                    PositionKey::Center => PulsePosition::Center,
                    PositionKey::Back => PulsePosition::Back,
                },
                pairing: self.table2_method.into(),
            },
        }
    }

    pub fn strategy_spec(&self) -> StrategySpec {
        StrategySpec::new(self.strategy()).with_scope(match self.chain_scope {
            ScopeKey::AllPhases => ChainScope::AllPhases,
            ScopeKey::ReferencePhase => ChainScope::ReferencePhase,
        })
    }

    pub fn modulator(&self) -> Result<ModulatorConfig> {
        ModulatorConfig::new(self.m_index, self.f1_hz, self.u_dc_v)
    }

    pub fn welch(&self) -> WelchConfig {
        WelchConfig {
            segment_len: self.psd_segment_len,
            overlap: self.psd_overlap,
            window: match self.psd_window {
                WindowKey::Hann => Window::Hann,
                WindowKey::Rectangular => Window::Rectangular,
            },
        }
    }

    pub fn load_params(&self) -> Result<LoadParams> {
        LoadParams::new(self.load_r_ohm, self.load_l_h, 0.0)
    }

    /// Checks every parameter; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if !(self.duration_s > 0.0 && self.duration_s.is_finite()) {
            return Err(Error::config(format!(
                "duration_s must be positive, got {}",
                self.duration_s
            )));
        }
        self.modulator()?;
        self.load_params()?;
        self.welch().validate()?;
        if !(self.fx_hz > 0.0 && self.fx_hz.is_finite()) {
            return Err(Error::config(format!(
                "fx_hz must be positive, got {}",
                self.fx_hz
            )));
        }
        if !(self.half_band_hz > 0.0 && self.half_band_hz < self.fx_hz) {
            return Err(Error::config(format!(
                "half_band_hz must lie in (0, fx_hz), got {}",
                self.half_band_hz
            )));
        }
        if !(self.export_window_s >= 0.0 && self.export_window_s.is_finite()) {
            return Err(Error::config("export_window_s must be non-negative"));
        }
        let strategy = self.strategy();
        let (lo, hi) = strategy.band_hz();
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::config(format!(
                "{}: switching band [{lo}, {hi}] Hz is invalid",
                strategy.name()
            )));
        }
        let required = crate::synthesis::MIN_OVERSAMPLING * hi;
        if self.sample_rate_hz.is_nan() || self.sample_rate_hz < required {
            return Err(Error::RateTooLow {
                rate_hz: self.sample_rate_hz,
                required_hz: required,
            });
        }
        let nyquist = self.sample_rate_hz / 2.0;
        if self.fx_hz + self.half_band_hz >= nyquist {
            return Err(Error::config("notch band reaches the Nyquist frequency"));
        }
        let samples = (self.duration_s * self.sample_rate_hz).round() as usize;
        if samples < self.psd_segment_len {
            return Err(Error::TooShort {
                samples,
                segment_len: self.psd_segment_len,
            });
        }
        let mut warnings = Vec::new();
        let periods = self.duration_s * self.f1_hz;
        if periods < 50.0 {
            warnings.push(format!(
                "duration covers {periods:.1} fundamental periods; fewer than 50 gives a noisy PSD"
            ));
        }
        Ok(warnings)
    }
}
