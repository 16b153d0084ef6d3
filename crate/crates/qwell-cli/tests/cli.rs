//! End-to-end tests of the `qwell` binary: output contracts, exit codes,
//! determinism, and spot values against the reference tables.

use std::path::Path;
use std::process::{Command, Output};

fn qwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwell"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = qwell(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>())
        .collect();
    (header, rows)
}

#[test]
fn tables_reproduce_reference_values() {
    let text = stdout_ok(&[
        "tables",
        "--methods",
        "wkb",
        "--z0sq",
        "4,9",
        "--levels",
        "9",
        "--digits",
        "10",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["method", "n", "z0sq=4", "z0sq=9"]);
    assert_eq!(rows.len(), 9);
    let want_4 = [
        Some(0.949292352),
        Some(1.039081813),
        Some(2.525729513),
        Some(3.240818000),
        None,
        None,
        None,
        None,
        None,
    ];
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row[0], "wkb");
        assert_eq!(row[1], n.to_string());
        match want_4[n] {
            Some(w) => {
                let got: f64 = row[2].parse().unwrap();
                assert!(((got - w) / w).abs() < 1e-6, "n={n}: {got} vs {w}");
            }
            None => assert_eq!(row[2], "N/A", "n={n} should be exhausted"),
        }
    }
    // the barrier-9 column has exactly one N/A, at n = 8
    let nas: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r[3] == "N/A")
        .map(|(n, _)| n)
        .collect();
    assert_eq!(nas, [8]);
}

#[test]
fn exact_tables_spot_check() {
    let text = stdout_ok(&[
        "tables",
        "--methods",
        "exact",
        "--z0sq",
        "4",
        "--levels",
        "2",
    ]);
    let (_, rows) = parse_csv(&text);
    let e0: f64 = rows[0][2].parse().unwrap();
    let e1: f64 = rows[1][2].parse().unwrap();
    assert!(
        ((e0 - 0.951418841) / 0.951418841).abs() < 1e-6,
        "ground level {e0}"
    );
    assert!(
        ((e1 - 1.035763395) / 1.035763395).abs() < 1e-6,
        "first excited {e1}"
    );
}

#[test]
fn spectrum_csv_round_trips_full_precision() {
    let text = stdout_ok(&[
        "spectrum",
        "--potential",
        "sho",
        "--methods",
        "maf",
        "--levels",
        "3",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["method", "n", "parity", "eps"]);
    // 17 significant digits uniquely identify the double; re-emitting the
    // parsed value must reproduce the field byte for byte
    for row in rows {
        let eps: f64 = row[3].parse().unwrap();
        assert_eq!(format!("{eps:.16e}"), row[3]);
    }
}

#[test]
fn identical_requests_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = qwell(&[
            "tables",
            "--methods",
            "wkb,maf",
            "--z0sq",
            "4",
            "--levels",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn usage_errors_exit_with_code_two() {
    // non-positive barrier height
    let out = qwell(&["tables", "--z0sq", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    // double well without z0sq
    let out = qwell(&["spectrum", "--potential", "dwp"]);
    assert_eq!(out.status.code(), Some(2));
    // level above the barrier names the limit
    let out = qwell(&[
        "wavefunction",
        "--potential",
        "dwp",
        "--z0sq",
        "4",
        "--level",
        "7",
        "--methods",
        "wkb",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(
        msg.contains("z0^2 = 4"),
        "message should name the barrier: {msg}"
    );
    // unknown flag (clap)
    let out = qwell(&["tables", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wavefunction_parity_and_node_contracts() {
    // odd double-well level: antisymmetric columns, zero at the origin
    let text = stdout_ok(&[
        "wavefunction",
        "--potential",
        "dwp",
        "--z0sq",
        "4",
        "--level",
        "1",
        "--points",
        "201",
        "--nmax",
        "120",
    ]);
    let (header, rows) = parse_csv(&text);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (zc, ec, wc, mc) = (col("z"), col("exact"), col("wkb"), col("maf"));
    let n = rows.len();
    for i in 0..n {
        let j = n - 1 - i;
        let z: f64 = rows[i][zc].parse().unwrap();
        let zj: f64 = rows[j][zc].parse().unwrap();
        assert_eq!(z, -zj);
        for c in [ec, wc, mc] {
            if rows[i][c].is_empty() || rows[j][c].is_empty() {
                continue;
            }
            let a: f64 = rows[i][c].parse().unwrap();
            let b: f64 = rows[j][c].parse().unwrap();
            assert!(
                (a + b).abs() < 1e-8,
                "column {c} not antisymmetric at row {i}"
            );
        }
    }
    let mid = &rows[n / 2];
    let z0: f64 = mid[zc].parse().unwrap();
    assert_eq!(z0, 0.0);
    let psi0_exact: f64 = mid[ec].parse().unwrap();
    let psi0_maf: f64 = mid[mc].parse().unwrap();
    assert!(psi0_exact.abs() <= 1e-9);
    assert!(psi0_maf.abs() <= 1e-9);
}

#[test]
fn wavefunction_maf_tracks_exact_ground_state() {
    let text = stdout_ok(&[
        "wavefunction",
        "--potential",
        "sho",
        "--level",
        "0",
        "--zmax",
        "4",
        "--points",
        "801",
        "--methods",
        "exact,maf",
        "--nmax",
        "120",
    ]);
    let (header, rows) = parse_csv(&text);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (ec, mc) = (col("exact"), col("maf"));
    let mut peak = 0.0f64;
    let mut dev = 0.0f64;
    for row in &rows {
        let e: f64 = row[ec].parse().unwrap();
        let m: f64 = row[mc].parse().unwrap();
        peak = peak.max(e.abs());
        dev = dev.max((e - m).abs());
    }
    assert!(dev <= 0.02 * peak, "max deviation {dev} vs peak {peak}");
}

#[test]
fn wavefunction_emits_bare_and_patch_curves_separately() {
    let text = stdout_ok(&[
        "wavefunction",
        "--potential",
        "sho",
        "--level",
        "0",
        "--zmax",
        "3",
        "--points",
        "241",
        "--methods",
        "wkb",
    ]);
    let (header, rows) = parse_csv(&text);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let (rc, bc, pc, wc) = (
        col("wkb_region"),
        col("wkb_bare"),
        col("wkb_patch"),
        col("wkb"),
    );
    let mut saw_patch_region_with_distinct_bare = false;
    for row in &rows {
        if row[rc] == "R2" && !row[bc].is_empty() {
            let bare: f64 = row[bc].parse().unwrap();
            let patch: f64 = row[pc].parse().unwrap();
            let assembled: f64 = row[wc].parse().unwrap();
            assert_eq!(
                patch, assembled,
                "inside the patch region the assembled curve is the patch"
            );
            if (bare - patch).abs() > 1e-3 {
                saw_patch_region_with_distinct_bare = true;
            }
        }
    }
    assert!(
        saw_patch_region_with_distinct_bare,
        "bare curve must continue through the patch region"
    );
}

#[test]
fn splitting_decreases_with_barrier_height() {
    let text = stdout_ok(&[
        "splitting",
        "--methods",
        "wkb",
        "--z0sq",
        "4,9,16",
        "--pairs",
        "1-0",
    ]);
    let (header, rows) = parse_csv(&text);
    assert_eq!(
        header,
        ["method", "z0sq", "pair", "even_eps", "odd_eps", "delta", "status"]
    );
    let deltas: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert!(deltas[0] > deltas[1] && deltas[1] > deltas[2], "{deltas:?}");
    assert!(deltas.iter().all(|d| *d > 0.0));
}

#[test]
fn splitting_marks_exhausted_pairs() {
    let text = stdout_ok(&[
        "splitting",
        "--methods",
        "wkb",
        "--z0sq",
        "4",
        "--pairs",
        "5-4",
    ]);
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows[0][6], "exhausted");
    assert!(rows[0][5].is_empty());
}

#[test]
fn compare_reports_the_continuity_dichotomy() {
    let out = stdout_ok(&[
        "compare",
        "--potential",
        "dwp",
        "--z0sq",
        "4",
        "--levels",
        "1",
        "--points",
        "401",
        "--nmax",
        "120",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], 1);
    let methods = &doc["levels"][0]["methods"];
    let wkb_jump = methods["wkb"]["max_relative_jump"].as_f64().unwrap();
    let maf_jump = methods["maf"]["max_relative_jump"].as_f64().unwrap();
    assert!(wkb_jump > 0.01, "wkb ground state jump {wkb_jump}");
    assert!(maf_jump <= 1e-8, "maf jump {maf_jump}");
    let wkb_err = methods["wkb"]["eps_error"].as_f64().unwrap();
    assert!(
        (wkb_err - 2.13e-3).abs() < 2e-4,
        "wkb eigenvalue error {wkb_err}"
    );
    // MAF ground-state wavefunction stays within 3% of the exact peak
    let maf_dev = methods["maf"]["max_relative_deviation"].as_f64().unwrap();
    assert!(maf_dev <= 0.03, "maf max relative deviation {maf_dev}");
}

#[test]
fn config_file_applies_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("solver.cfg");
    std::fs::write(&cfg, "# test configuration\nnmax=40\nzc=12\n").unwrap();
    let with_file = stdout_ok(&[
        "spectrum",
        "--potential",
        "sho",
        "--methods",
        "exact",
        "--levels",
        "1",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    let with_flag = stdout_ok(&[
        "spectrum",
        "--potential",
        "sho",
        "--methods",
        "exact",
        "--levels",
        "1",
        "--config",
        cfg.to_str().unwrap(),
        "--nmax",
        "80",
    ]);
    let parse_eps = |text: &str| -> f64 {
        let (_, rows) = parse_csv(text);
        rows[0][3].parse().unwrap()
    };
    let coarse = parse_eps(&with_file);
    let fine = parse_eps(&with_flag);
    // both converge toward 1; the bigger basis must not be worse
    assert!((coarse - 1.0).abs() < 1e-2);
    assert!((fine - 1.0).abs() <= (coarse - 1.0).abs());
    assert!(
        coarse != fine,
        "the --nmax flag must override the config file"
    );
    // unknown keys are rejected
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "boxwidth=10\n").unwrap();
    let out = qwell(&[
        "spectrum",
        "--potential",
        "sho",
        "--config",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_outputs_carry_schema_version() {
    for args in [
        vec![
            "spectrum",
            "--potential",
            "sho",
            "--levels",
            "1",
            "--methods",
            "wkb",
            "--format",
            "json",
        ],
        vec![
            "tables",
            "--z0sq",
            "4",
            "--levels",
            "1",
            "--methods",
            "wkb",
            "--format",
            "json",
        ],
        vec![
            "splitting",
            "--z0sq",
            "4",
            "--methods",
            "wkb",
            "--pairs",
            "1-0",
            "--format",
            "json",
        ],
    ] {
        let text = stdout_ok(&args);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["schema"], 1, "{args:?}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let stdout = stdout_ok(&["tables", "--methods", "maf", "--z0sq", "9", "--levels", "3"]);
    let out = qwell(&[
        "tables",
        "--methods",
        "maf",
        "--z0sq",
        "9",
        "--levels",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(Path::new(&path)).unwrap(), stdout);
}
