//! Invocations and helpers shared by the golden and acceptance tests.

#![allow(dead_code)]

use std::path::PathBuf;

use qlorenz_cli::run_cli;

pub const CASES: &[(&str, &[&str])] = &[
    (
        "simulate.csv",
        &[
            "simulate",
            "--t-end",
            "1",
            "--h",
            "0.01",
            "--discard",
            "0",
            "--sample-every",
            "10",
        ],
    ),
    (
        "simulate.json",
        &[
            "simulate",
            "--t-end",
            "0.05",
            "--h",
            "0.01",
            "--discard",
            "0",
            "--format",
            "json",
        ],
    ),
    (
        "msim_geometric.csv",
        &[
            "msim",
            "--kind",
            "geometric",
            "--t-end",
            "0.1",
            "--h",
            "0.001",
            "--discard",
            "0",
            "--sample-every",
            "10",
        ],
    ),
    (
        "msim_bigeometric.csv",
        &[
            "msim",
            "--kind",
            "bigeometric",
            "--t0",
            "1",
            "--t-end",
            "1.05",
            "--h",
            "0.001",
            "--discard",
            "0",
            "--sample-every",
            "10",
        ],
    ),
    ("equilibria.json", &["equilibria"]),
    ("stability.json", &["stability"]),
    (
        "stability_eplus.json",
        &["stability", "--point", "eplus", "--beta", "0.5"],
    ),
    (
        "lyapunov.json",
        &[
            "lyapunov",
            "--beta",
            "0.5",
            "--transient",
            "1",
            "--total-time",
            "5",
        ],
    ),
    (
        "sweep.json",
        &[
            "sweep",
            "--betas",
            "0.5,4,-1",
            "--t-end",
            "5",
            "--discard",
            "1",
            "--h",
            "0.01",
            "--transient",
            "1",
            "--total-time",
            "5",
        ],
    ),
    ("contraction.json", &["contraction", "--t", "1"]),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        std::iter::once("qlorenz").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out, String::from_utf8(err).unwrap())
}
