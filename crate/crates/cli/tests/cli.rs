use std::process::Command as Proc;

use pdmpct_cli::{parse_args, run_with, CaseSel, Command, Format, ParseError, RunConfig, SweepSummary};
use pdmpct_core::{CaseId, VerificationReport, CSV_HEADER};

fn parse(argv: &[&str]) -> RunConfig {
    parse_args(argv).unwrap()
}

fn usage_error(argv: &[&str]) -> String {
    match parse_args(argv) {
        Err(ParseError::Usage(msg)) => msg,
        other => panic!("expected usage error for {argv:?}, got {other:?}"),
    }
}

fn run(argv: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(&parse(argv), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn parse_examples() {
    let c = parse(&["list"]);
    assert_eq!(c.command, Command::List);
    let c = parse(&[
        "spectrum",
        "--case",
        "A2",
        "--param",
        "a=1",
        "--param",
        "dp=1",
        "--param",
        "theta=-0.2",
        "--levels",
        "4",
    ]);
    assert_eq!(c.command, Command::Spectrum);
    assert_eq!(c.case, Some(CaseSel::One(CaseId::A2)));
    assert_eq!(c.levels, 4);
    assert_eq!(c.params["theta"], -0.2);
    assert_eq!(c.params.len(), 3);
    let c = parse(&[
        "verify", "--case", "all", "--format", "json", "--tol", "1e-4", "--l-set", "1,2", "--grid", "0:10:101",
    ]);
    assert_eq!(c.case, Some(CaseSel::All));
    assert_eq!(c.format, Format::Json);
    assert_eq!(c.tol, 1e-4);
    assert_eq!(c.l_set, Some(vec![1, 2]));
    assert_eq!(c.grid.unwrap().points, 101);
}

#[test]
fn usage_errors_name_the_flag() {
    assert!(usage_error(&["verify", "--case", "B1a", "--param", "kappa=banana"]).contains("--param"));
    assert!(usage_error(&["verify", "--case", "A1", "--param", "mu=1"]).contains("mu"));
    assert!(usage_error(&["verify", "--case", "A9"]).contains("--case"));
    assert!(usage_error(&["spectrum"]).contains("--case"));
    assert!(usage_error(&["spectrum", "--case", "all"]).contains("--case"));
    assert!(usage_error(&["verify", "--case", "A1", "--tol=-1"]).contains("--tol"));
    assert!(usage_error(&["verify", "--case", "A1", "--levels", "0"]).contains("--levels"));
    assert!(usage_error(&["verify", "--case", "A1", "--format", "xml"]).contains("--format"));
    assert!(usage_error(&["verify", "--case", "A1", "--grid", "0:1"]).contains("--grid"));
    assert!(usage_error(&["verify", "--case", "A1", "--param", "delta=inf"]).contains("--param"));
    assert!(usage_error(&["sweep", "--case", "A1"]).contains("--sweep"));
    assert!(usage_error(&["sweep", "--case", "A1", "--sweep", "mu=0:1:3"]).contains("--sweep"));
    assert!(usage_error(&["frobnicate"]).contains("frobnicate"));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    std::fs::write(
        &path,
        "# desk overrides\ncase = A2\nlevels = 2\ntheta = -0.1\ndp = 2 # trailing comment\n\nformat=json\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let c = parse(&["spectrum", "--config", p]);
    assert_eq!(c.case, Some(CaseSel::One(CaseId::A2)));
    assert_eq!(c.levels, 2);
    assert_eq!(c.format, Format::Json);
    assert_eq!(c.params["theta"], -0.1);
    assert_eq!(c.params["dp"], 2.0);
    let c = parse(&[
        "spectrum",
        "--config",
        p,
        "--levels",
        "3",
        "--param",
        "theta=-0.2",
        "--format",
        "csv",
    ]);
    assert_eq!(c.levels, 3);
    assert_eq!(c.params["theta"], -0.2);
    assert_eq!(c.params["dp"], 2.0);
    assert_eq!(c.format, Format::Csv);
    std::fs::write(&path, "case = A2\nbanana\n").unwrap();
    assert!(usage_error(&["spectrum", "--config", p]).contains("--config"));
    assert!(usage_error(&["spectrum", "--config", "/nonexistent/run.cfg"]).contains("--config"));
}

#[test]
fn list_has_twelve_cases() {
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 13);
    assert!(out.lines().any(|l| l.starts_with("A1,") && l.contains("23;24;25")));
    assert!(out.lines().any(|l| l.starts_with("B2log,") && l.contains("54;55;56")));
    let (_, out, _) = run(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
}

#[test]
fn spectrum_a2_desk() {
    let (code, out, _) = run(&[
        "spectrum",
        "--case",
        "A2",
        "--param",
        "a=1",
        "--param",
        "dp=1",
        "--param",
        "theta=-0.2",
        "--levels",
        "4",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "n,l,E_construction,E_printed");
    assert_eq!(rows.len(), 5);
    let e0: f64 = rows[1].split(',').nth(3).unwrap().parse().unwrap();
    assert!((e0 + 0.015625).abs() < 1e-15);
}

#[test]
fn potential_and_wavefunction_columns() {
    let (code, out, _) = run(&[
        "potential",
        "--case",
        "B1a",
        "--param",
        "kappa=0",
        "--param",
        "c=0",
        "--l-set",
        "0",
        "--grid",
        "1:3:3",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!((rows[1][1] + 0.5).abs() < 1e-15);
    let (code, out, _) = run(&["wavefunction", "--case", "A3", "--n", "1", "--normalize", "--grid=-14:430:30001"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("x,value"));
    let vals: Vec<f64> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let h = 444.0 / 30000.0;
    let norm: f64 = h * (vals.iter().map(|v| v * v).sum::<f64>() - 0.5 * (vals[0].powi(2) + vals[vals.len() - 1].powi(2)));
    assert!((norm - 1.0).abs() < 1e-8, "{norm}");
}

#[test]
fn verify_constant_mass_passes() {
    let (code, out, err) = run(&["verify", "--case", "A1", "--param", "delta=1"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
    assert!(err.lines().all(|l| l.starts_with("note: ")));
}

#[test]
fn verify_json_round_trips() {
    let (code, out, _) = run(&["verify", "--case", "B2a", "--levels", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let r = VerificationReport::from_json(&out).unwrap();
    assert_eq!(r.case, "B2a");
    assert_eq!(r.levels.len(), 4);
    assert!(r.all_pass());
}

#[test]
fn verify_support_error_exits_one() {
    let (code, _, err) = run(&["verify", "--case", "A1", "--grid", "0:20:2001"]);
    assert_eq!(code, 1);
    assert!(err.contains("support"), "{err}");
}

#[test]
fn sweep_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("sweep");
    let argv = [
        "sweep",
        "--case",
        "B3a",
        "--sweep",
        "c=0.3:0.7:3",
        "--levels",
        "2",
        "--format",
        "json",
        "--out",
        out_dir.to_str().unwrap(),
    ];
    let (code, _, err) = run(&argv);
    assert_eq!(code, 0, "{err}");
    let summary: SweepSummary = serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.rows.len(), 3);
    assert!(summary.rows.windows(2).all(|w| w[0].value < w[1].value));
    for (i, row) in summary.rows.iter().enumerate() {
        let path = out_dir.join(format!("B3a_c_{i:03}.json"));
        let json = std::fs::read_to_string(&path).unwrap();
        assert_eq!(&pdmpct_cli::summarize_report(row.value, &json).unwrap(), row);
        let report = VerificationReport::from_json(&json).unwrap();
        assert_eq!(row.status == "pass", report.all_pass());
    }
    assert!(!out_dir.join("summary.csv").exists());
    // a value outside the validity range is reported, not fatal
    let (code, out, _) = run(&["sweep", "--case", "B3a", "--sweep", "c=-0.5:0.5:2", "--levels", "1"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().contains("invalid"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pdmpct");
    let s = Proc::new(bin)
        .args(["verify", "--case", "B1a", "--param", "kappa=banana"])
        .output()
        .unwrap();
    assert_eq!(s.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&s.stderr).contains("--param"));
    let s = Proc::new(bin).args(["list"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
    let s = Proc::new(bin).args(["--help"]).output().unwrap();
    assert_eq!(s.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&s.stdout).contains("verify"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.json");
    let (code, out, _) = run(&["spectrum", "--case", "B1b", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_array() || v.is_object());
}
