//! Selective noise suppression (SNS) for random space-vector PWM.
//!
//! The crate simulates a two-level three-phase inverter driven by 5-segment
//! SVPWM and schedules its switching pulses so that the pulse-train spectrum
//! has a null at a chosen frequency `fx`. It covers:
//!
//! * [`modulator`]: per-phase duty cycles from modulation index and angle.
//! * [`scheduler`]: cycle-by-cycle pulse position / switching frequency laws
//!   (CSVPWM, random position, random frequency, the two SNS laws and the
//!   fixed-position cancellation methods).
//! * [`synthesis`]: pulse trains, phase and line voltages, sampling.
//! * [`spectrum`]: closed-form Fourier transform of pulse trains, the
//!   cancellation residual, Welch PSD and notch metrics.
//! * [`circuit`]: exact RL-load current under piecewise-constant voltage.
//! * [`scenario`]: config-driven runs that write CSV artifacts and reports.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod circuit;
pub mod error;
pub mod modulator;
pub mod rng;
pub mod scenario;
pub mod scheduler;
pub mod spectrum;
pub mod synthesis;

pub use error::{Error, Result};
pub use modulator::{DutyTriple, ModulatorConfig, Phase};
pub use rng::SeededRng;
pub use scheduler::{CycleRecord, ScheduleRun, Strategy, StrategySpec};
pub use spectrum::{NotchReport, Spectrum};
pub use synthesis::{PulseTrain, SampledWaveform, StepSignal};
