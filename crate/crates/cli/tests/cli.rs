use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qwmeet::classical::cl_meet_total;
use qwmeet::sweep::{meeting_series_for, OverallSweep, WalkerKind};
use qwmeet::walk::hadamard;

fn qwmeet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwmeet"))
        .args(args)
        .env_remove("QWMEET_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let mut all = args.to_vec();
    all.extend(["--out", "-", "--quiet"]);
    let out = qwmeet(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Header names and numeric rows of one CSV block; empty cells become NaN.
fn parse_csv(text: &str) -> (String, Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let comment = lines.next().unwrap().to_string();
    assert!(comment.starts_with("# "), "{comment}");
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(|c| if c.is_empty() { f64::NAN } else { c.parse().unwrap() }).collect())
        .collect();
    (comment, header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    for (args, ext) in [
        (&["--command", "meeting-series", "--kind", "psi-", "--d", "4", "--steps", "80"][..], "csv"),
        (&["--command", "meeting-series", "--kind", "classical", "--trials", "500", "--seed", "9", "--steps", "30"], "csv"),
        (&["--command", "overall-sweep", "--steps", "40", "--format", "json"], "json"),
    ] {
        let mut texts = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("run{run}.{ext}"));
            let mut all = args.to_vec();
            let p = path.to_str().unwrap().to_string();
            all.extend(["--out", &p, "--quiet"]);
            assert!(qwmeet(&all).status.success());
            texts.push((fs::read(&path).unwrap(), fs::read(path.with_file_name(format!("run{run}.width.{ext}"))).ok()));
        }
        assert_eq!(texts[0], texts[1], "{args:?}");
    }
}

#[test]
fn csv_dialect_and_metadata() {
    let text = stdout_of(&["--command", "meeting-series", "--kind", "RL", "--d", "3", "--steps", "10"]);
    assert!(!text.contains('\r'));
    let (comment, header, rows) = parse_csv(&text);
    assert!(comment.contains(&format!("version={}", env!("CARGO_PKG_VERSION"))));
    for key in ["command=meeting-series", "kind=RL", "d=3", "steps=10"] {
        assert!(comment.contains(key), "{comment}");
    }
    assert_eq!(header, ["t", "M", "Mbar", "estimate"]);
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0][0], 1.0);
}

#[test]
fn single_walk_distribution_and_envelope() {
    let (_, header, rows) = parse_csv(&stdout_of(&["--command", "single-walk", "--steps", "100"]));
    assert_eq!(header, ["m", "P", "envelope"]);
    assert_eq!(rows.len(), 201);
    let total: f64 = rows.iter().map(|r| r[1]).sum();
    assert!((total - 1.0).abs() < 1e-10);
    let t = 100.0f64;
    for r in &rows {
        let u = r[0] / t;
        if 1.0 - 2.0 * u * u > 0.0 {
            let want = 2.0 / (std::f64::consts::PI * t * (1.0 - u * u) * (1.0 - 2.0 * u * u).sqrt());
            assert!((r[2] - want).abs() <= 1e-14 * want, "m={}", r[0]);
        } else {
            assert!(r[2].is_nan());
        }
    }
}

#[test]
fn one_step_walk() {
    let (_, _, rows) = parse_csv(&stdout_of(&["--command", "single-walk", "--steps", "1", "--oracle"]));
    let nonzero: Vec<_> = rows.iter().filter(|r| r[1] != 0.0).collect();
    assert_eq!(nonzero.len(), 2);
    for r in nonzero {
        assert!(r[0].abs() == 1.0 && (r[1] - 0.5).abs() < 1e-15);
    }
}

#[test]
fn classical_series_delegates() {
    let (_, header, rows) = parse_csv(&stdout_of(&["--command", "meeting-series", "--kind", "classical", "--d", "10"]));
    let m = column(&header, "M");
    for r in &rows {
        assert_eq!(r[m], cl_meet_total::<f64>(r[0] as u64, 10));
    }
}

#[test]
fn symmetric_series_matches_library_and_peaks_near_overlap() {
    let (_, header, rows) =
        parse_csv(&stdout_of(&["--command", "meeting-series", "--kind", "S", "--d", "10", "--steps", "60", "--oracle"]));
    let lib = meeting_series_for(WalkerKind::S, 10, 60, &hadamard::<f64>()).unwrap();
    let (m, mbar, est) = (column(&header, "M"), column(&header, "Mbar"), column(&header, "estimate"));
    for r in &rows {
        let t = r[0] as usize;
        assert_eq!(r[m], lib.at(t));
        assert_eq!(r[mbar], lib.overall_at(t));
        assert_eq!(r[est].is_nan(), t <= 14);
    }
    let peak = rows.iter().fold((0.0, 0.0), |b, r| if r[m] > b.1 { (r[0], r[m]) } else { b });
    assert!((12.0..=17.0).contains(&peak.0), "peak at {}", peak.0);
}

#[test]
fn fermions_from_one_state_never_meet() {
    let (_, header, rows) = parse_csv(&stdout_of(&[
        "--command", "meeting-series", "--kind", "fermion", "--coin1", "S", "--coin2", "S", "--d", "0", "--steps", "50",
    ]));
    let m = column(&header, "M");
    assert!(rows.iter().all(|r| r[m] == 0.0));
}

#[test]
fn oracle_checks_every_quantum_kind() {
    for kind in ["RL", "S", "LR", "psi+", "psi-", "phi+", "phi-", "boson", "fermion"] {
        let text = stdout_of(&["--command", "meeting-series", "--kind", kind, "--d", "2", "--steps", "30", "--oracle"]);
        let (comment, _, _) = parse_csv(&text);
        assert!(comment.contains("oracle_steps=30"), "{kind}: {comment}");
    }
}

#[test]
fn overall_sweep_rows_and_widths() {
    let text = stdout_of(&["--command", "overall-sweep", "--steps", "100", "--grid", "25,50,75"]);
    let (main, width) = text.split_once("\n\n").unwrap();
    let (_, header, rows) = parse_csv(main);
    assert_eq!(header, ["d", "separation", "RL", "S", "LR", "classical"]);
    assert_eq!(rows.len(), 101);
    let kinds = [WalkerKind::RL, WalkerKind::S, WalkerKind::LR, WalkerKind::Classical];
    let sweep = OverallSweep::run(&kinds, &[100], &hadamard::<f64>()).unwrap();
    for r in &rows {
        assert_eq!(r[1], 2.0 * r[0]);
        assert_eq!(r[1] % 2.0, 0.0);
        for k in 0..4 {
            assert_eq!(r[2 + k], sweep.overall(100, r[0] as u64, k));
        }
    }

    let (comment, header, rows) = parse_csv(width);
    assert!(comment.contains("width=max_d_with_Mbar_at_least_0.5"));
    assert_eq!(header, ["T", "width_RL", "width_S", "width_LR", "width_classical"]);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [25.0, 50.0, 75.0, 100.0]);
    for pair in rows.windows(2) {
        for k in 1..=4 {
            assert!(pair[1][k] >= pair[0][k]);
        }
        let quantum_gain = pair[1][1] - pair[0][1];
        assert!(quantum_gain > pair[1][4] - pair[0][4]);
    }
}

#[test]
fn json_mirrors_csv() {
    let args = ["--command", "meeting-series", "--kind", "LR", "--d", "5", "--steps", "25"];
    let (_, header, rows) = parse_csv(&stdout_of(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&json_args)).unwrap();
    assert_eq!(v["meta"]["kind"], "LR");
    let cols = v["columns"].as_object().unwrap();
    assert_eq!(cols.keys().collect::<Vec<_>>(), header.iter().collect::<Vec<_>>());
    for (i, name) in header.iter().enumerate() {
        let values = cols[name].as_array().unwrap();
        assert_eq!(values.len(), rows.len());
        for (r, x) in rows.iter().zip(values) {
            match x.as_f64() {
                Some(x) => assert_eq!(x, r[i]),
                None => assert!(r[i].is_nan()),
            }
        }
    }
}

#[test]
fn default_output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qwmeet"))
        .args(["--command", "overall-sweep", "--steps", "8", "--quiet"])
        .env("QWMEET_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let main = dir.path().join("overall-sweep-RL_S_LR_classical-T8.csv");
    assert!(main.exists());
    assert!(Path::new(&dir.path().join("overall-sweep-RL_S_LR_classical-T8.width.csv")).exists());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--command", "meeting-series"][..],
        &["--command", "meeting-series", "--kind", "psi"],
        &["--command", "single-walk", "--kind", "RL"],
        &["--command", "single-walk", "--steps", "0"],
        &["--command", "overall-sweep", "--d", "4"],
        &["--command", "meeting-series", "--kind", "S", "--trials", "5"],
        &["--command", "nope"],
        &["--steps", "5"],
    ] {
        let out = qwmeet(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_path_is_runtime_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let target = blocker.join("out.csv");
    let out = qwmeet(&["--command", "single-walk", "--steps", "3", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains(target.to_str().unwrap()));
}
