use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::tempdir;

fn ladderwave() -> Command {
    let mut cmd = Command::cargo_bin("ladderwave").unwrap();
    cmd.env("NO_COLOR", "1");
    cmd
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn probabilities_start_in_upper_level() {
    let out = ladderwave().args(["probabilities", "--steps", "10"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t_gamma2,p_f0,p_e1,p_g2"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], vec![0.0, 1.0, 0.0, 0.0]);
    for r in &rows {
        assert!((r[1] + r[2] + r[3] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn fig4b_peak_sits_at_zero_detuning() {
    let out = ladderwave().args(["figure", "fig4b"]).output().unwrap();
    assert!(out.status.success());
    let rows = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 61);
    let best = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!(best[0].abs() <= 0.002 + 1e-12, "argmax at {}", best[0]);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        ladderwave()
            .args(["spectrum", "--n", "21", "--out"])
            .arg(p)
            .assert()
            .success();
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ta.is_empty());
    // The header lists the output paths, so compare the data rows only.
    let strip = |t: &[u8]| {
        String::from_utf8_lossy(t)
            .lines()
            .filter(|l| !l.starts_with("# output"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&ta), strip(&tb));
    assert!(dir.path().join("a.manifest.json").exists());
}

#[test]
fn stdout_is_deterministic() {
    let run = || ladderwave().args(["identical", "--n", "31"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn invalid_parameters_exit_with_one() {
    ladderwave()
        .args(["probabilities", "--ratio", "-1"])
        .assert()
        .code(1)
        .stderr(predicate::str::starts_with("error:"))
        .stderr(predicate::str::contains("ratio"));
    ladderwave().args(["nonsense"]).assert().code(1);
    ladderwave()
        .args(["spectrum", "--n", "1"])
        .assert()
        .code(1);
}

#[test]
fn diagnostics_are_single_line_without_color() {
    let out = ladderwave().args(["probabilities", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(!err.contains('\x1b'));
}

#[test]
fn unreadable_config_and_unwritable_output_exit_with_three() {
    let dir = tempdir().unwrap();
    ladderwave()
        .args(["probabilities", "--config"])
        .arg(dir.path().join("missing.cfg"))
        .assert()
        .code(3);
    ladderwave()
        .args(["probabilities", "--out"])
        .arg(dir.path().join("no/such/dir/p.csv"))
        .assert()
        .code(3);
}

#[test]
fn explicit_flags_override_config() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("p.cfg");
    std::fs::write(&cfg, "# run\nratio = 3\nsteps = 4\n").unwrap();
    let from_cfg = ladderwave()
        .args(["probabilities", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    let text = String::from_utf8(from_cfg.stdout).unwrap();
    assert!(text.contains("ratio=3 "));
    assert_eq!(rows(&text).len(), 5);
    let overridden = ladderwave()
        .args(["probabilities", "--config"])
        .arg(&cfg)
        .args(["--ratio", "2"])
        .output()
        .unwrap();
    let text = String::from_utf8(overridden.stdout).unwrap();
    assert!(text.contains("ratio=2 "));
    assert_eq!(rows(&text).len(), 5);
}

#[test]
fn malformed_config_is_a_validation_error() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("p.cfg");
    std::fs::write(&cfg, "ratio 3\n").unwrap();
    ladderwave()
        .args(["probabilities", "--config"])
        .arg(&cfg)
        .assert()
        .code(1)
        .stderr(predicate::str::contains("key = value"));
}

#[test]
fn svg_is_written_next_to_output() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    ladderwave()
        .args(["figure", "fig2b", "--svg", "--out"])
        .arg(&out)
        .assert()
        .success();
    let svg = std::fs::read_to_string(dir.path().join("fig.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polyline"));
    let manifest = std::fs::read_to_string(dir.path().join("fig.manifest.json")).unwrap();
    assert!(manifest.contains("wall_clock_seconds"));
    ladderwave().args(["figure", "fig2b", "--svg"]).assert().code(1);
}

#[test]
fn verify_reports_json() {
    let dir = tempdir().unwrap();
    let cfg = dir.path().join("v.cfg");
    std::fs::write(&cfg, "modes = 101\nhalf-width = 0.3\nt-max = 2\n").unwrap();
    let out = ladderwave()
        .args(["verify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["n_modes"], 101);
    assert!(json["pass"].is_boolean());
    assert!(json["observables"].as_array().unwrap().len() >= 5);
}

#[test]
fn pulse_series_starts_from_initial_amplitude() {
    let out = ladderwave()
        .args(["pulse", "--steps", "5", "--alpha0", "0.5", "--weight", "0.75"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let rows = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 6);
    assert!((rows[0][1] - 0.5).abs() < 1e-12);
    assert!(rows.iter().all(|r| r[3] <= 1.0 + 1e-9));
}

#[test]
fn help_and_version_succeed() {
    ladderwave().arg("--help").assert().success().stdout(predicate::str::contains("probabilities"));
    ladderwave().arg("--version").assert().success();
}
