use std::io::BufReader;

mod support;

use qlorenz_cli::{EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use support::run;

#[test]
fn negative_beta_is_usage_error_naming_beta() {
    let (code, out, err) = run(&["simulate", "--beta", "-1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("beta"), "{err}");
}

#[test]
fn bad_settings_are_usage_errors() {
    for args in [
        &["simulate", "--h", "0"][..],
        &["simulate", "--t-end", "-1"],
        &["simulate", "--init", "1,2"],
        &["simulate", "--sigma", "nan"],
        &["lyapunov", "--renorm-interval", "0"],
        &["msim", "--kind", "bigeometric"],
        &["msim", "--kind", "bigeometric", "--t0", "0", "--t-end", "1"],
        &["sweep", "--betas", ""],
        &["stability", "--format", "csv"],
        &["nonsense"],
    ] {
        let (code, out, _) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
    }
}

#[test]
fn lyapunov_from_equilibrium_is_rejected() {
    let (code, _, err) = run(&["lyapunov", "--init", "0,0,0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("equilibrium"), "{err}");
}

#[test]
fn blow_up_is_numerical_failure_with_no_output() {
    let (code, out, err) = run(&["simulate", "--h", "0.5", "--t-end", "100"]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(out.is_empty());
    assert!(!err.is_empty());

    // geometric form loses its sign convention where y crosses zero
    let (code, out, _) = run(&["msim", "--t-end", "1"]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(out.is_empty());
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("simulate"));
    assert_eq!(run(&["--version"]).0, EXIT_OK);
}

#[test]
fn writes_trajectory_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let (code, out, err) = run(&["simulate", "--t-end", "100", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.is_empty());

    let samples = qlorenz::read_csv(BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("t,x,y,z\n"));
    // default discard is 10% of the span
    assert_eq!(samples.len(), 90_001);
    assert!((samples[0].t - 10.0).abs() < 1e-9);
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let (code, _, err) = run(&["equilibria", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("out.json"), "{err}");
}

#[test]
fn failed_run_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let (code, ..) = run(&[
        "simulate",
        "--h",
        "0.5",
        "--t-end",
        "100",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_NUMERICAL);
    assert!(!path.exists());
}
