use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_halfplane"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn field_map_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "run.cfg",
        "grid.rho = 0.5, 2, 3\ngrid.phi = 0, 6, 5\nmode = time\nt = 4\ncomponents = total, diffracted\n",
    );
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for (out, threads) in [(&a, "1"), (&b, "4")] {
        let o = run(&["--config", &cfg, "--threads", threads, "--out", out.to_str().unwrap(), "field-map"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read_to_string(a).unwrap();
    assert_eq!(a, std::fs::read_to_string(b).unwrap());
    let mut lines = a.lines();
    assert_eq!(lines.next(), Some("rho,phi,t,component,re,im"));
    assert_eq!(lines.count(), 3 * 5 * 2);
}

#[test]
fn stationary_field_map_has_no_coordinate_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.cfg", "grid.rho = 1, 2, 2\ngrid.phi = 1, 2, 2\ncomponents = total\n");
    let o = run(&["--config", &cfg, "field-map"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("rho,phi,component,re,im\n"));
    assert_eq!(s.lines().count(), 5);
}

#[test]
fn frequency_field_map_reports_omega() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "f.cfg",
        "grid.rho = 1, 2, 2\ngrid.phi = 2, 3, 2\nmode = frequency\nomega = 1, 0.5\ncomponents = scattered\n",
    );
    let o = run(&["--config", &cfg, "field-map"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = String::from_utf8(o.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("rho,phi,omega_re,omega_im,component,re,im"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[2].parse::<f64>().unwrap(), 1.0);
    assert_eq!(row[3].parse::<f64>().unwrap(), 0.5);
    assert_eq!(row[4], "scattered");
}

#[test]
fn bad_alpha_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.cfg", "alpha = 0.3\n");
    let o = run(&["--config", &cfg, "field-map"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
}

#[test]
fn unknown_key_and_zero_rho_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "k.cfg", "colour = blue\n");
    assert_eq!(run(&["--config", &cfg, "field-map"]).status.code(), Some(2));
    let cfg = write_config(dir.path(), "z.cfg", "grid.rho = 0, 1, 2\ncomponents = diffracted\n");
    assert_eq!(run(&["--config", &cfg, "field-map"]).status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_writes_json() {
    let o = run(&["verify", "--suite", "kernel-decomposition", "--suite", "causality"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["pass"] == true));
}

#[test]
fn verify_fails_with_exit_one_when_a_check_fails() {
    // a budget of two subdivisions cannot meet the suite tolerances
    let o = run(&["--max-subdiv", "2", "--rel-tol", "1e-14", "--abs-tol", "1e-300", "verify", "--suite", "kernel-decomposition"]);
    assert!(matches!(o.status.code(), Some(1) | Some(3)), "{:?}", o.status);
}

#[test]
fn kernel_dump_and_jump_study_emit_csv() {
    let o = run(&["kernel-dump"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().next(), Some("phi,beta,re,im,abs_times_envelope"));
    assert_eq!(s.lines().count(), 1 + 3 * 201);

    let o = run(&["jump-study"]);
    assert!(o.status.success());
    let s = String::from_utf8(o.stdout).unwrap();
    for line in s.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let got = (f[3].parse::<f64>().unwrap(), f[4].parse::<f64>().unwrap());
        let want = (f[6].parse::<f64>().unwrap(), f[7].parse::<f64>().unwrap());
        assert!((got.0 - want.0).hypot(got.1 - want.1) < 1e-6, "{line}");
    }
}

#[test]
fn lap_study_emits_decreasing_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "l.cfg", "lap.times = 10, 100\n");
    let o = run(&["--config", &cfg, "lap-study"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = String::from_utf8(o.stdout).unwrap();
    let errs: Vec<f64> = s.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(errs.len(), 2);
    assert!(errs[1] < errs[0]);
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn diffracted_column_is_zero_before_the_front() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.cfg",
        "grid.rho = 1, 5, 4\ngrid.phi = 0, 6.2, 9\nmode = time\nt = 0.5\ncomponents = diffracted\n",
    );
    let o = run(&["--config", &cfg, "field-map"]);
    assert!(o.status.success());
    for r in rows(&String::from_utf8(o.stdout).unwrap()) {
        assert_eq!(r[4].parse::<f64>().unwrap(), 0.0);
        assert_eq!(r[5].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn scattered_cancels_incident_on_the_lit_face() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "b.cfg",
        "grid.rho = 0.5, 4, 5\ngrid.phi = 0, 1, 2\ncomponents = scattered, incident\n",
    );
    let o = run(&["--config", &cfg, "field-map"]);
    assert!(o.status.success());
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    for pair in r.chunks(2).filter(|p| p[0][1].parse::<f64>().unwrap() == 0.0) {
        let s = (pair[0][3].parse::<f64>().unwrap(), pair[0][4].parse::<f64>().unwrap());
        let i = (pair[1][3].parse::<f64>().unwrap(), pair[1][4].parse::<f64>().unwrap());
        assert!((s.0 + i.0).hypot(s.1 + i.1) < 1e-8, "{pair:?}");
    }
}

#[test]
fn stationary_map_shows_three_regions() {
    // α = 3π/4: φ₋ = π/4, φ₊ = 7π/4; one angle in the reflection zone, one in the shadow
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "r.cfg",
        "alpha = 2.356194490192345\ngrid.rho = 6, 8, 2\ngrid.phi = 0.3, 5.9, 2\ncomponents = total, incident, diffracted\n",
    );
    let o = run(&["--config", &cfg, "field-map"]);
    assert!(o.status.success());
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    let mag = |row: &Vec<String>| row[3].parse::<f64>().unwrap().hypot(row[4].parse::<f64>().unwrap());
    for chunk in r.chunks(3) {
        let phi: f64 = chunk[0][1].parse().unwrap();
        let (total, inc, dif) = (mag(&chunk[0]), mag(&chunk[1]), mag(&chunk[2]));
        assert!(dif < 0.2, "diffracted part is small away from the rays: {dif}");
        if phi > 5.0 {
            // deep shadow: only the diffracted part survives
            assert!(total < 0.2 && (total - dif).abs() < 1e-9, "{total} {dif}");
        } else {
            // lit: incident and reflected interfere
            assert!((inc - 1.0).abs() < 1e-12 && total > 0.2);
        }
    }
}

#[test]
fn verify_jumps_at_three_quarter_pi() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "j.cfg", "alpha = 2.356194490192345\n");
    let o = run(&["--config", &cfg, "verify", "--suite", "jumps"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
