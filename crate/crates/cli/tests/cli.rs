use std::path::Path;
use std::process::{Command, Output};

fn oddsmo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddsmo"))
        .args(args)
        .env_remove("ODDSMO_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn eval_tabulates_log_logistic_quantiles() {
    let out = oddsmo(&["eval", "--dist", "ell:0,1,1", "--points", "3", "--plo", "0.25", "--phi", "0.75"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,cdf,pdf,survival,hazard,odds,odds_rate"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for (row, (x, c)) in rows.iter().zip([(1.0 / 3.0, 0.25), (1.0, 0.5), (3.0, 0.75)]) {
        assert!((row[0] - x).abs() < 1e-11 && (row[1] - c).abs() < 1e-11, "{row:?}");
        assert!((row[5] - x).abs() < 1e-11);
        // standard log-logistic: odds rate 1
        assert!((row[6] - 1.0).abs() < 1e-9);
    }
    assert!(!text.contains('\r'));
}

#[test]
fn order_exit_codes() {
    let cases: &[(&str, &str, &str, i32, &str)] = &[
        ("st", "exp:2", "exp:1", 0, "holds"),
        ("st", "exp:1", "exp:2", 1, "reversed"),
        ("st", "exp:1", "domo:0,2,2@exp:1", 2, "crosses"),
        ("lr", "exp:1", "exp:1e-305", 3, "inconclusive"),
    ];
    for &(r, left, right, want, status) in cases {
        let out = oddsmo(&["order", "--relation", r, "--left", left, "--right", right]);
        assert_eq!(code(&out), want, "{r} {left} {right}: {}", stderr(&out));
        assert!(stdout(&out).contains(&format!("status={status}")), "{}", stdout(&out));
    }
    let out = oddsmo(&["order", "--relation", "st", "--left", "exp:1", "--right", "domo:0,2,2@exp:1"]);
    let witness = stdout(&out)
        .lines()
        .find_map(|l| l.strip_prefix("witness=").map(str::to_string))
        .unwrap();
    assert!(witness.parse::<f64>().unwrap().is_finite());
}

#[test]
fn usage_and_parse_errors_exit_64() {
    let out = oddsmo(&["eval", "--dist", "weibull:2,0"]);
    assert_eq!(code(&out), 64);
    let err = stderr(&out);
    assert!(err.contains("weibull:2,0") && err.contains("          ^") && err.contains("column 11"), "{err}");
    assert_eq!(code(&oddsmo(&["frobnicate"])), 64);
    assert_eq!(code(&oddsmo(&["order", "--relation", "xx", "--left", "exp:1", "--right", "exp:1"])), 64);
    assert_eq!(code(&oddsmo(&["verify", "--trials", "0"])), 64);
    assert_eq!(code(&oddsmo(&["--help"])), 0);
}

#[test]
fn capability_errors_exit_65() {
    let out = oddsmo(&["stability", "--dist", "exp:1", "--p", "0.5", "--n", "1000"]);
    assert_eq!(code(&out), 65, "{}", stderr(&out));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn unwritable_output_exits_74() {
    let out = oddsmo(&["prentice", "--out", "/nonexistent-dir/p.csv"]);
    assert_eq!(code(&out), 74);
}

#[test]
fn classify_reports_key_values() {
    let out = oddsmo(&["classify", "--dist", "weibull:2,1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "ihr=true"), "{text}");
    assert!(text.lines().any(|l| l == "dhr=false"), "{text}");
}

#[test]
fn stability_passes_for_rescaled_laws() {
    let out = oddsmo(&["stability", "--dist", "domo:1,1,2@exp:1", "--p", "0.5", "--n", "20000", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).lines().any(|l| l == "passed=true"));
}

/// `∫ pdf` from the file grid: power-law trapezoid on `[1, 1000]`, the mass
/// below 1 from the CDF column, and the tail beyond 1000.
fn file_grid_integral(xs: &[f64], pdf: &[f64], cdf: &[f64]) -> f64 {
    let mut total = cdf[1] + (1.0 - cdf[xs.len() - 1]);
    for i in 1..xs.len() - 1 {
        let (x0, x1, f0, f1) = (xs[i], xs[i + 1], pdf[i], pdf[i + 1]);
        let k = (f1 / f0).ln() / (x1 / x0).ln();
        total += if (k + 1.0).abs() < 1e-12 {
            f0 * x0 * (x1 / x0).ln()
        } else {
            f0 * x0 / (k + 1.0) * ((x1 / x0).powf(k + 1.0) - 1.0)
        };
    }
    total
}

#[test]
fn prentice_densities_integrate_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let out = oddsmo(&["prentice", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,baseline_pdf,domo_pdf,baseline_cdf,domo_cdf"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 1001);
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<f64>>();
    let xs = col(0);
    assert_eq!(xs[1000], 1000.0);
    for (pdf, cdf) in [(1, 3), (2, 4)] {
        let total = file_grid_integral(&xs, &col(pdf), &col(cdf));
        assert!((total - 1.0).abs() < 1e-3, "column {pdf}: {total}");
    }
}

#[test]
fn verify_writes_the_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.json");
    let out = oddsmo(&[
        "verify", "--trials", "4", "--seed", "42", "--case", "OMO-ST-1", "--case", "ELL-HR-THETA-EQ-A0-HR6",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["seed"], 42);
    assert_eq!(doc["trials"], 4);
    let cases = doc["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 2);
    for c in cases {
        for key in ["id", "trials_applicable", "agreements", "disagreements"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    assert_eq!(doc["summary"]["flagged"][0]["id"], "ELL-HR-THETA-EQ-A0-HR6");
    assert!(stderr(&out).contains("OMO-ST-1"));
    assert_eq!(code(&oddsmo(&["verify", "--trials", "2", "--case", "NOPE"])), 64);
}

#[test]
fn thread_override_does_not_change_the_report() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_oddsmo"))
            .args(["verify", "--trials", "3", "--seed", "5", "--case", "DOMO-ST-1", "--case", "ELL-CTO-1"])
            .env("ODDSMO_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}

fn assert_repeatable(args: &[&str], file: Option<&Path>) {
    let read = |out: &Output| match file {
        Some(p) => std::fs::read(p).unwrap(),
        None => out.stdout.clone(),
    };
    let first = oddsmo(args);
    let a = read(&first);
    let second = oddsmo(args);
    assert_eq!(code(&first), code(&second));
    assert_eq!(a, read(&second), "{args:?}");
}

#[test]
fn seeded_commands_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    assert_repeatable(&["eval", "--dist", "domo:0.5,2,1.5@gamma:4,1", "--out", csv.to_str().unwrap()], Some(&csv));
    assert_repeatable(&["stability", "--dist", "domo:0,2,0.5@weibull:2,1", "--p", "0.3", "--n", "5000", "--seed", "11"], None);
    assert_repeatable(&["verify", "--trials", "2", "--seed", "9", "--case", "GEOM-STABILITY"], None);
}
