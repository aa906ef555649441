use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::config::{ScenarioConfig, StrategyKind};
use crate::circuit::{rl_current, write_current_csv};
use crate::error::{Error, Result};
use crate::modulator::Phase;
use crate::scheduler::{schedule, CycleRecord, ScheduleRun};
use crate::spectrum::{
    band_flatness, notch_report, welch_psd, write_overlay_csv, Flatness, NotchReport, Spectrum,
};
use crate::synthesis::{
    line_voltage_signal, phase_voltage_signal, pulse_train, sample, write_waveform_csv, PulseTrain,
};

/// Strategy a test run is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Rp,
    Csvpwm,
    Rf,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::Rp => "rp",
            BaselineKind::Csvpwm => "csvpwm",
            BaselineKind::Rf => "rf",
        }
    }

    fn strategy(self) -> StrategyKind {
        match self {
            BaselineKind::Rp => StrategyKind::Rp,
            BaselineKind::Csvpwm => StrategyKind::Csvpwm,
            BaselineKind::Rf => StrategyKind::Rf,
        }
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rp" => Ok(BaselineKind::Rp),
            "csvpwm" => Ok(BaselineKind::Csvpwm),
            "rf" => Ok(BaselineKind::Rf),
            other => Err(Error::config(format!(
                "unknown baseline {other:?} (expected rp, csvpwm or rf)"
            ))),
        }
    }
}

/// Same parameters and seed with the strategy swapped for the baseline.
pub fn baseline_config(cfg: &ScenarioConfig, kind: BaselineKind) -> ScenarioConfig {
    ScenarioConfig {
        strategy: kind.strategy(),
        ..cfg.clone()
    }
}

/// Schedule, pulse trains and line-voltage PSD of one run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub run: ScheduleRun,
    pub trains: [PulseTrain; 3],
    /// Welch PSD of the sampled line voltage `u_ab`.
    pub psd: Spectrum,
    pub warnings: Vec<String>,
}

pub fn analyze(cfg: &ScenarioConfig) -> Result<Analysis> {
    let mut warnings = cfg.validate()?;
    let modulator = cfg.modulator()?;
    let spec = cfg.strategy_spec();
    let run = schedule(spec, &modulator, cfg.duration_s, cfg.seed)?;
    warnings.extend(run.stats.warnings.iter().cloned());
    let trains = [
        pulse_train(&run.cycles, Phase::A)?,
        pulse_train(&run.cycles, Phase::B)?,
        pulse_train(&run.cycles, Phase::C)?,
    ];
    let line = line_voltage_signal(&trains[0], &trains[1], cfg.u_dc_v);
    let wave = sample(&line, cfg.sample_rate_hz, spec.strategy.max_switching_hz())?;
    let psd = welch_psd(&wave, &cfg.welch())?;
    Ok(Analysis {
        run,
        trains,
        psd,
        warnings,
    })
}

fn notch(test: &Analysis, baseline: &Analysis, cfg: &ScenarioConfig) -> Result<NotchReport> {
    let mut report = notch_report(&test.psd, &baseline.psd, cfg.fx_hz, cfg.half_band_hz)?;
    report.fallbacks = test.run.stats.total_fallbacks();
    report.chain_restarts = test.run.stats.total_chain_restarts();
    Ok(report)
}

/// Test run analysed against a baseline with identical parameters and seed.
pub fn compare(
    cfg: &ScenarioConfig,
    kind: BaselineKind,
) -> Result<(Analysis, Analysis, NotchReport)> {
    let test = analyze(cfg)?;
    let baseline = analyze(&baseline_config(cfg, kind))?;
    let report = notch(&test, &baseline, cfg)?;
    Ok((test, baseline, report))
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: NotchReport,
    pub warnings: Vec<String>,
    pub files: Vec<PathBuf>,
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, BufWriter<File>)> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    Ok((path, BufWriter::new(file)))
}

fn write_file(
    dir: &Path,
    name: &str,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<PathBuf> {
    let (path, mut out) = create(dir, name)?;
    body(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn write_cycles_csv<W: Write>(out: &mut W, cycles: &[CycleRecord]) -> std::io::Result<()> {
    writeln!(out, "# sns-svpwm cycles v1")?;
    writeln!(
        out,
        "m,t_m_s,ts_s,sector,d_a,d_b,d_c,r_a,r_b,r_c,k_a,k_b,k_c,fallback_a,fallback_b,fallback_c"
    )?;
    for c in cycles {
        let d = c.duty.0;
        let r = c.position;
        let k: Vec<String> = c
            .k_used
            .iter()
            .map(|k| k.map_or(String::new(), |k| k.to_string()))
            .collect();
        let fb: Vec<u8> = c.fallback.iter().map(|&f| f as u8).collect();
        writeln!(
            out,
            "{},{:.12e},{:.12e},{},{:.12},{:.12},{:.12},{:.12},{:.12},{:.12},{},{},{},{},{},{}",
            c.m,
            c.t_m,
            c.ts,
            c.sector,
            d[0],
            d[1],
            d[2],
            r[0],
            r[1],
            r[2],
            k[0],
            k[1],
            k[2],
            fb[0],
            fb[1],
            fb[2]
        )?;
    }
    Ok(())
}

fn write_report<W: Write>(
    out: &mut W,
    cfg: &ScenarioConfig,
    baseline: BaselineKind,
    test: &Analysis,
    report: &NotchReport,
) -> std::io::Result<()> {
    writeln!(out, "# sns-svpwm report v1")?;
    writeln!(out, "strategy = {}", test.run.spec.strategy.name())?;
    writeln!(out, "chain_scope = {}", test.run.spec.scope.name())?;
    writeln!(out, "seed = {}", cfg.seed)?;
    writeln!(out, "duration_s = {}", cfg.duration_s)?;
    writeln!(out, "cycles = {}", test.run.cycles.len())?;
    let fb = test.run.stats.fallbacks;
    let cr = test.run.stats.chain_restarts;
    writeln!(out, "fallbacks_by_phase = {} {} {}", fb[0], fb[1], fb[2])?;
    writeln!(
        out,
        "chain_restarts_by_phase = {} {} {}",
        cr[0], cr[1], cr[2]
    )?;
    writeln!(
        out,
        "feasibility_warnings = {}",
        test.run.stats.warnings.len()
    )?;
    for w in &test.warnings {
        writeln!(out, "warning = {w}")?;
    }
    writeln!(out, "baseline = {}", baseline.name())?;
    writeln!(out, "psd_resolution_hz = {}", test.psd.meta.resolution_hz)?;
    writeln!(out, "psd_segments = {}", test.psd.meta.segments)?;
    writeln!(out, "{report}")
}

/// Tail of the run written to the time-domain CSV files.
fn export_span(cfg: &ScenarioConfig, end_s: f64) -> (f64, usize) {
    let window = cfg.export_window_s.min(end_s);
    let count = (window * cfg.sample_rate_hz).round() as usize;
    (end_s - count as f64 / cfg.sample_rate_hz, count)
}

/// Writes cycles.csv, waveform.csv, psd.csv, current.csv and report.txt.
///
/// The notch is measured against a random-position run with the same
/// parameters and seed.
pub fn run_simulate(cfg: &ScenarioConfig, out_dir: &Path) -> Result<Outcome> {
    let (test, baseline, report) = compare(cfg, BaselineKind::Rp)?;
    let end = test.run.end_time();
    let (start, count) = export_span(cfg, end);
    let mut files = vec![write_file(out_dir, "cycles.csv", |o| {
        write_cycles_csv(o, &test.run.cycles)
    })?];
    files.push(write_file(out_dir, "waveform.csv", |o| {
        write_waveform_csv(
            o,
            &test.trains,
            cfg.u_dc_v,
            cfg.sample_rate_hz,
            start,
            count,
        )
    })?);
    files.push(write_file(out_dir, "psd.csv", |o| test.psd.write_csv(o))?);
    let u_a = phase_voltage_signal(&test.trains, Phase::A, cfg.u_dc_v);
    let current = rl_current(&u_a, &cfg.load_params()?).sample(cfg.sample_rate_hz, start, count);
    files.push(write_file(out_dir, "current.csv", |o| {
        write_current_csv(o, &current)
    })?);
    files.push(write_file(out_dir, "report.txt", |o| {
        write_report(o, cfg, BaselineKind::Rp, &test, &report)
    })?);
    drop(baseline);
    Ok(Outcome {
        report,
        warnings: test.warnings,
        files,
    })
}

/// Writes the test/baseline PSD overlay to psd.csv and the notch report to report.txt.
pub fn run_compare(cfg: &ScenarioConfig, kind: BaselineKind, out_dir: &Path) -> Result<Outcome> {
    let (test, baseline, report) = compare(cfg, kind)?;
    let (path, mut out) = create(out_dir, "psd.csv")?;
    write_overlay_csv(&mut out, &test.psd, &baseline.psd)?;
    out.flush().map_err(|e| Error::io(&path, e))?;
    let mut files = vec![path];
    files.push(write_file(out_dir, "report.txt", |o| {
        write_report(o, cfg, kind, &test, &report)
    })?);
    Ok(Outcome {
        report,
        warnings: test.warnings,
        files,
    })
}

/// Half width of the windows around switching-frequency multiples.
pub const FLATNESS_HALF_WIDTH_HZ: f64 = 200.0;

/// Flatness of `psd` around `fs`, `2 fs`, `3 fs` and `4 fs`.
pub fn flatness_profile(psd: &Spectrum, fs_hz: f64) -> Vec<Flatness> {
    (1..=4)
        .filter_map(|n| band_flatness(psd, n as f64 * fs_hz, FLATNESS_HALF_WIDTH_HZ))
        .collect()
}

pub fn write_flatness_csv<W: Write>(out: &mut W, rows: &[Flatness]) -> std::io::Result<()> {
    writeln!(out, "# sns-svpwm flatness v1")?;
    writeln!(out, "center_hz,std_db,peak_to_mean_db")?;
    for f in rows {
        writeln!(
            out,
            "{},{:.6},{:.6}",
            f.center_hz, f.std_db, f.peak_to_mean_db
        )?;
    }
    Ok(())
}

/// Writes flatness.csv for the configured run.
pub fn run_flatness(cfg: &ScenarioConfig, out_dir: &Path) -> Result<(Vec<Flatness>, Vec<String>)> {
    let a = analyze(cfg)?;
    let rows = flatness_profile(&a.psd, cfg.fs_hz);
    write_file(out_dir, "flatness.csv", |o| write_flatness_csv(o, &rows))?;
    Ok((rows, a.warnings))
}
