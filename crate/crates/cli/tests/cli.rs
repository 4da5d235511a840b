use std::fs;
use std::process::{Command, Output};

use llab_core::fields::io::read_field_csv;
use llab_core::params::SystemParams;

fn llab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_llab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn critdim_row() {
    let o = llab(&["critdim", "--p", "3", "--alpha", "0", "--beta", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,alpha,beta,bracket_lo,bracket_hi,n_crit,cowan,fazly")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 8);
    let n_crit: f64 = row[5].parse().unwrap();
    let cowan: f64 = row[6].parse().unwrap();
    assert!((n_crit - 18.16).abs() <= 0.05);
    assert!((cowan - 15.99).abs() < 0.01);
    assert_eq!(row[7].parse::<f64>().unwrap(), 12.0);

    let o = llab(&["critdim", "--p", "3", "--alpha", "1", "--beta", "0"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!((row[6], row[7]), ("", ""));
}

#[test]
fn classify_on_hyperbola() {
    let o = llab(&[
        "classify", "--N", "8", "--p", "3", "--alpha", "0", "--beta", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("regime,OnHyperbola"));
    assert!(text.contains("\nc_const,"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(llab(&["critdim", "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(
        llab(&["classify", "--N", "12", "--p", "3", "--beta", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(llab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        llab(&["critdim", "--p", "3", "--tol", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, "p,alpha,beta\n3,0,0\n0.5,0,0\n").unwrap();
    let out = dir.path().join("out.csv");
    let o = llab(&[
        "sweep",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("`p`"), "{err}");
}

fn sweep_input() -> String {
    let mut s = String::from("# 36 rows\np,alpha,beta\n");
    for p in ["1.5", "2", "3", "5"] {
        for a in ["-1", "0", "2.5"] {
            for b in ["0", "1", "2"] {
                s.push_str(&format!("{p},{a},{b}\n"));
            }
        }
    }
    s
}

#[test]
fn sweep_is_identical_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, sweep_input()).unwrap();
    let run = |jobs: &str| {
        let out = dir.path().join(format!("out{jobs}.csv"));
        let o = llab(&[
            "sweep",
            "--input",
            input.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--n-values",
            "7,12,19",
            "--jobs",
            jobs,
        ]);
        assert_eq!(o.status.code(), Some(0));
        fs::read(out).unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one, four);
    assert_eq!(String::from_utf8(one).unwrap().lines().count(), 1 + 36 * 3);
}

#[test]
fn sweep_jobs_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, "p,alpha,beta\n3,0,0\n").unwrap();
    let out = dir.path().join("out.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_llab"))
        .args([
            "sweep",
            "--input",
            input.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
        ])
        .env("LLAB_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(out).unwrap();
    assert!(text.lines().nth(1).unwrap().ends_with(",ok"));
    let bad = Command::new(env!("CARGO_BIN_EXE_llab"))
        .args(["sweep", "--input", input.to_str().unwrap(), "--output", "x"])
        .env("LLAB_JOBS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn shoot_dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("shot.csv");
    let o = llab(&[
        "shoot",
        "--N",
        "12",
        "--p",
        "3",
        "--a",
        "1",
        "--b",
        "0.1",
        "--r-max",
        "20",
        "--points",
        "1025",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    let meta = text.lines().next().unwrap();
    assert!(
        meta.starts_with("# ") && meta.contains("terminated=BlowupDetected"),
        "{meta}"
    );

    let q = SystemParams::new(12.0, 3.0, 0.0, 0.0).unwrap();
    let field = read_field_csv(&q, text.as_bytes()).unwrap();
    let mut again = Vec::new();
    llab_core::fields::io::write_field_csv(&field, &[meta[2..].to_string()], &mut again).unwrap();
    assert_eq!(String::from_utf8(again).unwrap(), text);
}

#[test]
fn monotone_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.csv");
    let o = llab(&[
        "monotone",
        "--N",
        "12",
        "--p",
        "3",
        "--field",
        "singular",
        "--r-min",
        "0.5",
        "--r-max",
        "2",
        "--points",
        "400",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# field=singular"));
    assert_eq!(
        lines.next(),
        Some("r,M,dMdr,rhsBound,term1,term2,term3,term4,term5,term6,term7")
    );
    assert_eq!(lines.count(), 400 - 8);

    for field in ["bump", "shoot"] {
        let o = llab(&[
            "monotone",
            "--N",
            "12",
            "--p",
            "3",
            "--field",
            field,
            "--modes",
            "0:1:1:0.5,2:0.3:1.2:0.4",
            "--r-min",
            "1e-3",
            "--r-max",
            "20",
            "--points",
            "1025",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{field}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    assert!(
        fs::read_to_string(&out)
            .unwrap()
            .starts_with("# field=shoot,")
    );
}

#[test]
fn shoot_rejects_coarse_start() {
    let o = llab(&[
        "shoot", "--N", "12", "--p", "3", "--a", "1", "--b", "0.1", "--r-min", "0.1", "--r-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_quick_passes() {
    let o = llab(&["verify", "--quick"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 13);
}
