use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

const BIN: &str = env!("CARGO_BIN_EXE_permdistill");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

/// Data rows (no comments, no header) split on commas.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

fn total_of(csv: &str) -> f64 {
    let r = rows(csv);
    let last = r.last().expect("total row");
    assert_eq!(last[0], "total");
    num(&last[2])
}

#[test]
fn spectrum_single_excitation() {
    let out = stdout(&["spectrum", "-n", "2", "-l", "1", "-p", "0.6"]);
    assert!(out.contains("j,eigenvalue,multiplicity,source"));
    let r = rows(&out);
    assert_eq!(r.len(), 2);
    for (row, (j, value)) in r.iter().zip([("0", 0.34), ("1", 0.16)]) {
        assert_eq!(row[0], j);
        assert!((num(&row[1]) - value).abs() < 1e-15);
        assert_eq!(row[2], "1");
        assert_eq!(row[3], "analytic");
    }
}

#[test]
fn spectrum_maximally_mixed() {
    let r = rows(&stdout(&["spectrum", "-n", "4", "-l", "2", "-p", "0"]));
    assert_eq!(r.len(), 3);
    assert!(r.iter().all(|row| num(&row[1]) == 0.0625));
    let dims: u64 = r.iter().map(|row| row[2].parse::<u64>().unwrap()).sum();
    assert_eq!(dims, 6);
}

#[test]
fn spectrum_with_oracle() {
    let out = stdout(&["spectrum", "-n", "8", "-l", "4", "-p", "0.5", "--oracle"]);
    let diff = out
        .lines()
        .find_map(|l| l.strip_prefix("# max_abs_diff="))
        .expect("trailing diff comment");
    assert!(num(diff) <= 1e-9);
    assert!(rows(&out).iter().any(|row| row[3] == "oracle"));
}

#[test]
fn spectrum_json() {
    let out = stdout(&["--format", "json", "spectrum", "-n", "3", "-l", "1", "-p", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn rate_vanishes_without_entanglement() {
    let out = stdout(&["rate", "-x", "0", "-q", "0.3", "-a", "0.5", "-N", "16"]);
    assert!(out.contains("i,n_i,R_i"));
    assert_eq!(total_of(&out), 0.0);
}

#[test]
fn rate_hand_sum() {
    let out = stdout(&["rate", "-x", "1", "-q", "1", "-a", "0.5", "-N", "4"]);
    let r1: f64 = [1.0f64, 4.0, 6.0, 4.0, 1.0].iter().map(|c| c / 16.0 * c.log2()).sum();
    assert!((total_of(&out) - r1 / 4.0).abs() < 1e-14);
    let r = rows(&out);
    assert_eq!(r[0][..2], ["1".to_string(), "4".to_string()]);
    assert!((num(&r[0][2]) - r1).abs() < 1e-14);
}

#[test]
fn rate_golden_value() {
    let out = stdout(&["rate", "-x", "0.8", "-q", "0.2", "-a", "0.5", "-N", "16"]);
    assert_eq!(total_of(&out), 0.0340234440000624);
    let partials: Vec<f64> = rows(&out).iter().take(3).map(|r| num(&r[2])).collect();
    assert_eq!(partials, vec![2.53894078113608, 0.861326269320943, 0.240238567299614]);
}

#[test]
fn qudit_rates() {
    let zero = stdout(&["rate", "-x", "0.9", "-N", "4", "--qudit", "3", "--variant", "zero"]);
    let naive = stdout(&["rate", "-x", "0.9", "-N", "4", "--qudit", "3", "--variant", "naive"]);
    // qudit protocols carry R_1 .. R_k, the last at single pairs
    assert_eq!(rows(&zero).len(), 3);
    assert!(total_of(&zero) >= total_of(&naive));
    let parity = stdout(&["rate", "-x", "0.9", "-N", "4", "--qudit", "4", "--variant", "parity"]);
    assert!(total_of(&parity) > 0.0);
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["rate", "-x", "0.9", "-N", "4", "--qudit", "3", "--variant", "parity"],
        &["rate", "-x", "0.9", "-q", "0.1", "-a", "0.5", "-N", "4", "--variant", "zero"],
        &["rate", "-x", "0.9", "-q", "0.1", "-a", "0.5", "-N", "6"],
        &["rate", "-x", "1.5", "-q", "0.1", "-a", "0.5", "-N", "4"],
        &["rate", "-x", "0.9", "-N", "4"],
        &["spectrum", "-n", "17", "-l", "1", "-p", "0.5"],
        &["spectrum", "-n", "13", "-l", "1", "-p", "0.5", "--oracle"],
        &["spectrum", "-n", "4", "-l", "5", "-p", "0.5"],
        &["spectrum", "-n", "4", "-l", "1", "-p", "1.5"],
        &["sweep", "--figure", "6"],
        &["verify", "--sections", "bogus"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

fn sweep_rows(figure: &str) -> Vec<Vec<f64>> {
    rows(&stdout(&["sweep", "--figure", figure]))
        .iter()
        .map(|r| r.iter().take(3).map(|s| num(s)).collect())
        .collect()
}

#[test]
fn figure_1_symmetric_in_q() {
    let r = sweep_rows("1");
    for a in &r {
        let mirror = r
            .iter()
            .find(|b| b[0] == a[0] && (b[1] - (1.0 - a[1])).abs() < 1e-12)
            .expect("mirror grid point");
        assert!((a[2] - mirror[2]).abs() <= 1e-12, "{a:?} vs {mirror:?}");
    }
}

#[test]
fn figure_3_symmetric_in_alpha() {
    let r = sweep_rows("3");
    assert_eq!(r.len(), 101);
    for (a, b) in r.iter().zip(r.iter().rev()) {
        assert!((a[1] - b[1]).abs() <= 1e-12, "{a:?} vs {b:?}");
    }
}

#[test]
fn figure_4_more_copies_help() {
    let r = sweep_rows("4");
    let curve = |n: f64| -> Vec<f64> { r.iter().filter(|row| row[0] == n).map(|row| row[2]).collect() };
    let (two, sixteen) = (curve(2.0), curve(16.0));
    assert_eq!(two.len(), 101);
    for (a, b) in two.iter().zip(&sixteen) {
        assert!(b + 1e-12 >= *a);
    }
}

#[test]
fn sweep_is_deterministic_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let args = |p: &Path, jobs: &'static str| {
        let out = run(&["--jobs", jobs, "--output", p.to_str().unwrap(), "sweep", "--figure", "5"]);
        assert_eq!(out.status.code(), Some(0));
    };
    args(&a, "1");
    args(&b, "4");
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap(), stdout(&["sweep", "--figure", "5"]));
}

#[test]
fn sweep_config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(&cfg, "# custom grid\nsweep = x\nq = 0.1\nsteps = 5\nseries = N\nseries_values = 4, 16\n").unwrap();
    let out = stdout(&["sweep", "--config", cfg.to_str().unwrap(), "--steps", "3"]);
    assert!(out.contains("# sweep = x"));
    assert!(out.contains("# steps = 3"));
    let r = rows(&out);
    assert_eq!(r.len(), 6);
    assert_eq!(r[0][1], "0.0");
    assert_eq!(r[2][1], "1.0");

    std::fs::write(&cfg, "sweep = y\n").unwrap();
    assert_eq!(run(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_cas_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["--output", path.to_str().unwrap(), "verify", "--sections", "cas", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("intersection numbers extracted"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    for check in report["checks"].as_array().unwrap() {
        for field in ["name", "scope", "status", "residual", "witness"] {
            assert!(check.get(field).is_some(), "{field} missing from {check}");
        }
        assert_eq!(check["status"], "pass");
    }
}

#[test]
fn verify_max_n_10_within_budget() {
    let start = Instant::now();
    let out = run(&["verify", "--max-n", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(start.elapsed() < Duration::from_secs(300));
    assert!(String::from_utf8(out.stdout).unwrap().trim_end().ends_with("0 failed: PASS"));
}
