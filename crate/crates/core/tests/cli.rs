use std::path::Path;
use std::process::{Command, Output};

use farfield::discretization::SampledField;

fn farfield(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_farfield"))
        .args(args)
        .current_dir(dir)
        .env_remove("FARFIELD_THREADS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const DIPOLE: &str = r#"{"frequency_hz": 1.0e9, "radius_m": 0.1, "sources": {"dipole": {"moment_re": [0, 0, 1], "moment_im": [0, 0, 0]}}, "L_min": 0, "L_max": 6}"#;

#[test]
fn radiate_then_project_reproduces_band_limited_field() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "s.json", DIPOLE);
    let out = farfield(&["radiate", "--scenario", "s.json", "--grid-l-max", "8", "--out", "f.csv"], d);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = farfield(&["project", "--input", "f.csv", "--degree", "6", "--out", "p.csv"], d);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let f = SampledField::from_csv(&std::fs::read_to_string(d.join("f.csv")).unwrap()).unwrap();
    let p = SampledField::from_csv(&std::fs::read_to_string(d.join("p.csv")).unwrap()).unwrap();
    assert_eq!(f.values().len(), 9 * 17);
    let diff = f
        .values()
        .iter()
        .zip(p.values())
        .flat_map(|(a, b)| (0..3).map(move |i| (a[i] - b[i]).norm()))
        .fold(0.0, f64::max);
    assert!(diff < 1e-10, "max deviation {diff:e}");
}

#[test]
fn dipole_pattern_peaks_at_equator() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "s.json", DIPOLE);
    let out = farfield(&["radiate", "--scenario", "s.json"], d);
    assert_eq!(out.status.code(), Some(0));
    let f = SampledField::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let grid = f.grid();
    assert_eq!(f.values().len(), 7 * 13);
    let n_phi = grid.n_phi();
    for j in 0..n_phi {
        let mags: Vec<(f64, f64)> = (0..grid.n_theta())
            .map(|i| {
                let node = i * n_phi + j;
                let v = f.values()[node];
                (grid.nodes()[node].theta(), (0..3).map(|c| v[c].norm_sqr()).sum::<f64>())
            })
            .collect();
        let peak = mags.iter().cloned().fold((0.0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        let nearest = mags
            .iter()
            .map(|m| m.0)
            .min_by(|a, b| (a - std::f64::consts::FRAC_PI_2).abs().total_cmp(&(b - std::f64::consts::FRAC_PI_2).abs()))
            .unwrap();
        assert_eq!(peak.0, nearest);
    }
}

#[test]
fn empty_source_file_gives_zero_field() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "e.json", r#"{"radius": 0.1, "sources": []}"#);
    write(
        d,
        "s.json",
        r#"{"frequency_hz": 1.0e9, "radius_m": 0.1, "sources": {"file": {"path": "e.json"}}, "L_max": 4}"#,
    );
    let out = farfield(&["radiate", "--scenario", "s.json"], d);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5 * 9);
    for r in rows {
        assert!(r.split(',').skip(3).all(|c| c.parse::<f64>().unwrap() == 0.0));
    }
}

#[test]
fn invalid_scenarios_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "bad.json", r#"{"frequency_hz": -1, "radius_m": 0.1, "sources": {"random": {"count": 2, "seed": 0}}, "L_max": 4}"#);
    write(d, "garbage.json", "not json");
    for args in [
        &["bound", "--scenario", "bad.json"][..],
        &["sweep", "--scenario", "garbage.json"],
        &["radiate", "--scenario", "missing.json"],
        &["sweep"],
    ] {
        assert_eq!(farfield(args, d).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bound_table_and_thread_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // ka = 2π·1e9/c·0.8 ≈ 16.8 → L_B = 17
    write(d, "s.json", r#"{"frequency_hz": 1.0e9, "radius_m": 0.8, "sources": {"random": {"count": 2, "seed": 0}}, "L_max": 25}"#);
    let out = farfield(&["--threads", "1", "bound", "--scenario", "s.json", "--json"], d);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["L_B"], 17);
    assert_eq!(v["rows"][0]["L"], 17);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);

    let env_run = |val: &str| {
        Command::new(env!("CARGO_BIN_EXE_farfield"))
            .args(["bound", "--scenario", "s.json"])
            .current_dir(d)
            .env("FARFIELD_THREADS", val)
            .output()
            .unwrap()
    };
    let ok = env_run("2");
    assert_eq!(ok.status.code(), Some(0));
    let flag = farfield(&["--threads", "2", "bound", "--scenario", "s.json"], d);
    assert_eq!(ok.stdout, flag.stdout);
    assert_eq!(env_run("zero").status.code(), Some(2));
}

#[test]
fn sweep_json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "s.json", r#"{"frequency_hz": 2.0e9, "radius_m": 0.05, "sources": {"random": {"count": 10, "seed": 1}}, "L_min": 1, "L_max": 6, "seed": 4}"#);
    let csv = farfield(&["sweep", "--scenario", "s.json"], d);
    let json = farfield(&["sweep", "--scenario", "s.json", "--json"], d);
    assert_eq!(csv.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let text = String::from_utf8(csv.stdout).unwrap();
    for (line, rec) in text.lines().skip(1).zip(v["records"].as_array().unwrap()) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0].parse::<u64>().unwrap(), rec["L"].as_u64().unwrap());
        assert_eq!(cols[1].parse::<f64>().unwrap(), rec["empirical_error"].as_f64().unwrap());
        assert!(rec["projection_error"].as_f64().unwrap() <= rec["empirical_error"].as_f64().unwrap() + 1e-10);
        assert!(cols[4].is_empty());
    }
    let timed = farfield(&["sweep", "--scenario", "s.json", "--timing"], d);
    let t = String::from_utf8(timed.stdout).unwrap();
    assert!(t.lines().skip(1).all(|l| !l.ends_with(',')));
}
