//! Configured end-to-end runs writing CSV artifacts and a notch report.

mod config;
mod run;

pub use config::{
    PairingKey, PositionKey, ScenarioConfig, ScopeKey, StrategyKind, VariantKey, WindowKey,
};
pub use run::{
    analyze, baseline_config, compare, flatness_profile, run_compare, run_flatness, run_simulate,
    write_cycles_csv, write_flatness_csv, Analysis, BaselineKind, Outcome, FLATNESS_HALF_WIDTH_HZ,
};
