//! CSV trajectory files and JSON report documents.
//!
//! Trajectories are written as `t,x,y,z` with LF line endings and every
//! number in scientific notation with 17 significant digits, enough for an
//! exact round trip. Reports are pretty-printed JSON with sorted keys.

use std::io::{self, BufRead, Write};

use serde::Serialize;
use serde_json::Value;

use crate::integrators::{Sample, Trajectory};
use crate::model::State3;

pub const CSV_HEADER: &str = "t,x,y,z";
pub const SCHEMA_VERSION: &str = "1";

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(traj: &Trajectory, sink: &mut W) -> io::Result<()> {
    write_samples_csv(&traj.samples, sink)
}

pub fn write_samples_csv<W: Write>(samples: &[Sample], sink: &mut W) -> io::Result<()> {
    let mut out = String::with_capacity(80 * (samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let State3 { x, y, z } = s.state;
        out.push_str(&[s.t, x, y, z].map(fmt_f64).join(","));
        out.push('\n');
    }
    sink.write_all(out.as_bytes())
}

/// Parses what [`write_csv`] produces.
pub fn read_csv<R: BufRead>(source: R) -> io::Result<Vec<Sample>> {
    let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut lines = source.lines();
    match lines.next().transpose()? {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(invalid(format!("expected header {CSV_HEADER:?}, got {other:?}"))),
    }
    let mut samples = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        let fields = line
            .split(',')
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("row {}: {e}", n + 1)))?;
        let [t, x, y, z] = fields[..] else {
            return Err(invalid(format!("row {}: expected 4 fields", n + 1)));
        };
        samples.push(Sample {
            t,
            state: State3::new(x, y, z),
        });
    }
    Ok(samples)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: &impl Serialize, results: &impl Serialize) -> serde_json::Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: serde_json::to_value(inputs)?,
            results: serde_json::to_value(results)?,
            warnings: Vec::new(),
        })
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }
}

pub fn write_json<W: Write>(report: &ReportDocument, sink: &mut W) -> io::Result<()> {
    // Round-tripping through `Value` puts object keys in sorted order.
    let value = serde_json::to_value(report)?;
    let mut bytes = serde_json::to_vec_pretty(&value)?;
    bytes.push(b'\n');
    sink.write_all(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrators::SimSettings;
    use crate::model::SystemParams;

    fn constant_traj(n: usize) -> Trajectory {
        Trajectory {
            params: SystemParams::default(),
            settings: SimSettings::default(),
            samples: (0..n)
                .map(|i| Sample {
                    t: i as f64 * 0.1,
                    state: State3::ORIGIN,
                })
                .collect(),
        }
    }

    #[test]
    fn csv_line_count() {
        let mut buf = Vec::new();
        write_csv(&constant_traj(3), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("t,x,y,z\n0.0000000000000000e0,"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&constant_traj(0), &mut buf).unwrap();
        assert_eq!(buf, b"t,x,y,z\n");
        assert!(read_csv(&buf[..]).unwrap().is_empty());
    }

    #[test]
    fn read_rejects_garbage() {
        assert!(read_csv(&b"a,b\n"[..]).is_err());
        assert!(read_csv(&b"t,x,y,z\n1,2,3\n"[..]).is_err());
        assert!(read_csv(&b"t,x,y,z\n1,2,3,q\n"[..]).is_err());
    }

    #[test]
    fn json_keys_are_sorted_and_schema_versioned() {
        let doc = ReportDocument::new("demo", &serde_json::json!({"b": 1, "a": 2}), &3).unwrap();
        let mut buf = Vec::new();
        write_json(&doc, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let command = text.find("\"command\"").unwrap();
        let inputs = text.find("\"inputs\"").unwrap();
        let schema = text.find("\"schema_version\": \"1\"").unwrap();
        assert!(command < inputs && inputs < schema);
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.ends_with("}\n"));
    }
}
