use std::fs;
use std::path::Path;
use std::process::Command;

use sns_svpwm::scenario::{
    analyze, compare, run_compare, run_flatness, run_simulate, BaselineKind, ScenarioConfig,
    StrategyKind,
};
use sns_svpwm::spectrum::dominant_peaks;
use sns_svpwm::Error;

fn quick(strategy: StrategyKind) -> ScenarioConfig {
    ScenarioConfig {
        strategy,
        duration_s: 0.5,
        psd_segment_len: 1 << 15,
        ..ScenarioConfig::default()
    }
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn simulate_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_simulate(&quick(StrategyKind::SnsRp), dir.path()).unwrap();
    assert_eq!(out.files.len(), 5);
    let headers = [
        ("cycles.csv", "m,t_m_s,ts_s,sector,d_a,d_b,d_c,r_a,r_b,r_c,k_a,k_b,k_c,fallback_a,fallback_b,fallback_c"),
        ("waveform.csv", "time_s,x_a,x_b,x_c,u_ab_v"),
        ("psd.csv", "freq_hz,psd_db_hz"),
        ("current.csv", "time_s,i_a_amps"),
    ];
    for (name, header) in headers {
        let text = read(dir.path(), name);
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# sns-svpwm "), "{name}");
        assert_eq!(lines.next().unwrap(), header, "{name}");
        assert!(lines.next().is_some(), "{name} has no rows");
    }
    let cycles = read(dir.path(), "cycles.csv");
    assert_eq!(cycles.lines().count() - 2, 1250);
    let waveform = read(dir.path(), "waveform.csv");
    assert_eq!(waveform.lines().count() - 2, 20_000);

    let report = read(dir.path(), "report.txt");
    for key in [
        "strategy = sns_rp",
        "seed = 1",
        "fallbacks = ",
        "chain_restarts = ",
        "feasibility_warnings = ",
        "max_reduction_db = ",
        "notch_width_hz = ",
    ] {
        assert!(report.contains(key), "missing {key}");
    }
    // 0.5 s is 25 fundamental periods
    assert!(report.contains("warning = duration covers 25.0"));
}

#[test]
fn outputs_are_byte_identical_per_seed() {
    let cfg = quick(StrategyKind::SnsRfRp);
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_simulate(&cfg, a.path()).unwrap();
    run_simulate(&cfg, b.path()).unwrap();
    for name in [
        "cycles.csv",
        "waveform.csv",
        "psd.csv",
        "current.csv",
        "report.txt",
    ] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    let c = tempfile::tempdir().unwrap();
    run_simulate(&ScenarioConfig { seed: 2, ..cfg }, c.path()).unwrap();
    assert_ne!(read(a.path(), "cycles.csv"), read(c.path(), "cycles.csv"));
}

#[test]
fn zero_duration_is_config_error() {
    let cfg = ScenarioConfig {
        duration_s: 0.0,
        ..ScenarioConfig::default()
    };
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        run_simulate(&cfg, dir.path()),
        Err(Error::Config(_))
    ));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn self_comparison_is_flat() {
    for kind in [StrategyKind::Rp, StrategyKind::Rf, StrategyKind::Csvpwm] {
        let baseline = match kind {
            StrategyKind::Rp => BaselineKind::Rp,
            StrategyKind::Rf => BaselineKind::Rf,
            _ => BaselineKind::Csvpwm,
        };
        let (_, _, r) = compare(&quick(kind), baseline).unwrap();
        assert!(r.max_reduction_db.abs() < 1.0);
    }
}

#[test]
fn compare_writes_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_compare(
        &quick(StrategyKind::SnsRp),
        BaselineKind::Csvpwm,
        dir.path(),
    )
    .unwrap();
    let psd = read(dir.path(), "psd.csv");
    assert_eq!(
        psd.lines().nth(1).unwrap(),
        "freq_hz,psd_db_hz,psd_baseline_db_hz"
    );
    assert!(read(dir.path(), "report.txt").contains("baseline = csvpwm"));
    assert!(out.report.notch_width_hz >= 0.0);
}

#[test]
fn csvpwm_energy_sits_at_switching_multiples() {
    let a = analyze(&quick(StrategyKind::Csvpwm)).unwrap();
    for bin in dominant_peaks(&a.psd, 1000.0, 11_000.0, 4) {
        let f = a.psd.freqs_hz[bin];
        let nearest = (f / 2500.0).round() * 2500.0;
        assert!((f - nearest).abs() <= 250.0, "peak at {f} Hz");
    }
}

#[test]
fn flatness_rows_cover_four_multiples() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ScenarioConfig {
        strategy: StrategyKind::Csvpwm,
        ..ScenarioConfig::default()
    };
    let (rows, _) = run_flatness(&cfg, dir.path()).unwrap();
    let centres: Vec<f64> = rows.iter().map(|f| f.center_hz).collect();
    assert_eq!(centres, [2500.0, 5000.0, 7500.0, 10_000.0]);
    assert!(rows.iter().all(|f| f.peak_to_mean_db > 15.0));
    let text = read(dir.path(), "flatness.csv");
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "center_hz,std_db,peak_to_mean_db"
    );
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sns-svpwm"))
}

#[test]
fn cli_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    fs::write(
        &config,
        "strategy = \"sns_rp\"\nduration_s = 0.5\npsd_segment_len = 32768\n",
    )
    .unwrap();
    let out = dir.path().join("sim");
    let status = cli()
        .args(["simulate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--seed", "7"])
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    assert!(String::from_utf8_lossy(&status.stderr).contains("warning:"));
    assert!(read(&out, "report.txt").contains("seed = 7"));

    let out = dir.path().join("cmp");
    let status = cli()
        .args(["compare", "--baseline", "rf", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(read(&out, "report.txt").contains("baseline = rf"));

    let out = dir.path().join("flat");
    let status = cli()
        .args(["flatness", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(String::from_utf8_lossy(&status.stdout).contains("center_hz = 10000"));
    assert!(out.join("flatness.csv").exists());
}

#[test]
fn cli_rejects_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    fs::write(&config, "duration_s = 0.0\n").unwrap();
    let out = cli()
        .args(["simulate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("duration_s"));

    fs::write(&config, "colour = \"red\"\n").unwrap();
    let out = cli()
        .args(["simulate", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let out = cli()
        .args(["compare", "--baseline", "svm"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}
