//! End-to-end checks of the binary: flag handling, exit codes, output
//! schemas, and determinism across thread counts.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parabola-points"))
        .args(args)
        .env_remove("PARABOLA_POINTS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn gauss_example_output() {
    let out = run(&["gauss", "--j", "1", "--q", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2+2i (scale=1, unit=1+i, radicand=4)\n");
}

#[test]
fn count_example_csv_row() {
    let out = run(&["count", "--q", "100", "--delta", "1/100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# schema=1\nq,num,den,count,r,term1,term2,term3,ratio\n"));
    let row = text.lines().nth(2).expect("data row");
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[..5], &["100", "1", "100", "10", "10"]);
}

#[test]
fn invalid_threshold_exits_one() {
    let out = run(&["count", "--q", "100", "--delta", "3/4"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1/2"), "diagnostic names the precondition: {err}");
}

#[test]
fn decimal_threshold_rejected() {
    let out = run(&["count", "--q", "100", "--delta", "0.01"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn even_modulus_rejected() {
    // jacobi-top characters need odd q1; the twist is required for even q1
    let out = run(&["charsum", "--q1", "8", "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["charsum", "--q1", "8", "--n", "5", "--twist", "quadratic"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_s_exits_one() {
    let out = run(&["series", "--s", "0.5", "--mode", "eta"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("11/13") || err.contains("0.84615"), "{err}");
}

#[test]
fn missing_required_flag_exits_one() {
    let out = run(&["count", "--delta", "1/8"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["nonsense-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn scan_output_deterministic_across_threads() {
    let a = run(&[
        "scan", "--q-range", "2:20000", "--delta-rule", "pow:0.75", "--threads", "1",
    ]);
    let b = run(&[
        "scan", "--q-range", "2:20000", "--delta-rule", "pow:0.75", "--threads", "2",
    ]);
    let c = run(&[
        "scan", "--q-range", "2:20000", "--delta-rule", "pow:0.75", "--threads", "7",
    ]);
    assert_eq!(out_pair(&a), out_pair(&b));
    assert_eq!(out_pair(&b), out_pair(&c));
}

#[test]
fn series_output_deterministic_across_threads() {
    let a = run(&[
        "series", "--psi", "power:c=1,tau=0.75", "--s", "1", "--Q", "30000",
        "--mode", "full", "--output", "json", "--threads", "1",
    ]);
    let b = run(&[
        "series", "--psi", "power:c=1,tau=0.75", "--s", "1", "--Q", "30000",
        "--mode", "full", "--output", "json", "--threads", "3",
    ]);
    assert_eq!(out_pair(&a), out_pair(&b));
}

fn out_pair(out: &Output) -> (Option<i32>, String) {
    (out.status.code(), stdout(out))
}

#[test]
fn selftests_run_quickly() {
    for cmd in ["count", "gauss", "charsum", "scan", "burgess", "series", "dual"] {
        let t0 = std::time::Instant::now();
        let out = run(&[cmd, "--selftest"]);
        assert_eq!(out.status.code(), Some(0), "{cmd} selftest failed");
        assert!(
            t0.elapsed().as_secs() < 5,
            "{cmd} selftest exceeded 5 seconds"
        );
        assert!(stdout(&out).contains("ok"));
    }
}

#[test]
fn json_output_parses() {
    for args in [
        vec!["count", "--q", "360", "--delta", "1/20", "--output", "json"],
        vec!["gauss", "--j", "3", "--q", "8", "--output", "json"],
        vec!["scan", "--q-range", "2:500", "--delta", "1/10", "--output", "json"],
        vec!["burgess", "--q1-range", "2:60", "--output", "json"],
        vec![
            "series", "--psi", "power:c=1,tau=0.75", "--s", "1", "--Q", "2000",
            "--output", "json",
        ],
        vec![
            "count", "--q", "40", "--delta", "1/10", "--lambda", "2/3",
            "--interval", "0:1/2", "--alpha", "1/4", "--output", "json",
        ],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "args: {args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
        assert!(v.is_object(), "args: {args:?}");
    }
}

#[test]
fn csv_headers_are_versioned() {
    for args in [
        vec!["count", "--q", "10", "--delta", "1/10"],
        vec!["scan", "--q-range", "2:100", "--delta", "1/10"],
        vec!["burgess", "--q1-range", "2:50"],
        vec!["series", "--psi", "power:c=1,tau=0.75", "--s", "1", "--Q", "100"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).starts_with("# schema=1\n"), "args: {args:?}");
    }
}

#[test]
fn moment_and_twisted_known_values() {
    let out = run(&[
        "count", "--q", "4", "--delta", "1/8", "--lambda", "1/2", "--output", "plain",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(": 1\n"), "{}", stdout(&out));

    let out = run(&[
        "count", "--q", "5", "--delta", "3/10", "--interval", "0:2/5", "--output", "plain",
    ]);
    assert!(stdout(&out).contains(": 2\n"), "{}", stdout(&out));

    let out = run(&[
        "count", "--q", "2", "--delta", "1/4", "--alpha", "1/2", "--output", "plain",
    ]);
    // moment sum = sqrt(2)
    assert!(stdout(&out).contains("1.41421356237e0"), "{}", stdout(&out));
}
