//! Small fixed invocations pinned byte-for-byte. Set `QLORENZ_BLESS=1` to
//! regenerate the files after an intentional output change.

mod support;

use support::{golden_path, run, CASES};

#[test]
fn outputs_match_golden_files() {
    let bless = std::env::var_os("QLORENZ_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{name}: {err}");
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != out {
            mismatched.push(*name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (name, args) in CASES {
        assert_eq!(run(args).1, run(args).1, "{name}");
    }
}
