//! Sweep CSV files and dataset manifests.
//!
//! A sweep file has the header `frequency_hz,magnitude` with an optional
//! third column `phase_deg`, followed by one row per grid point in ascending
//! frequency order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assessment::Normalization;
use crate::curve::{align_family, CurveFamily, FrequencyResponse};
use crate::error::{Error, Result};

const FREQUENCY: &str = "frequency_hz";
const MAGNITUDE: &str = "magnitude";
const PHASE: &str = "phase_deg";

/// Parses a sweep CSV. Line numbers in errors are 1-based file lines.
pub fn parse_sweep(bytes: &[u8], label: &str) -> Result<FrequencyResponse> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r?,
        None => return Err(Error::MalformedHeader { line: 1 }),
    };
    let header_line = header.position().map_or(1, |p| p.line());
    let names: Vec<&str> = header.iter().map(|h| h.trim_start_matches('\u{feff}')).collect();
    let with_phase = match names.as_slice() {
        [FREQUENCY, MAGNITUDE] => false,
        [FREQUENCY, MAGNITUDE, PHASE] => true,
        _ => return Err(Error::MalformedHeader { line: header_line }),
    };
    let width = if with_phase { 3 } else { 2 };

    let mut frequencies = Vec::new();
    let mut magnitudes = Vec::new();
    let mut phases = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != width {
            return Err(Error::BadNumber {
                line,
                message: format!("expected {width} fields, found {}", record.len()),
            });
        }
        let mut values = [0.0; 3];
        for (i, field) in record.iter().enumerate() {
            values[i] = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::BadNumber {
                    line,
                    message: format!("`{field}` is not a finite number"),
                })?;
        }
        if values[0] <= 0.0 {
            return Err(Error::BadNumber {
                line,
                message: format!("frequency {} must be positive", values[0]),
            });
        }
        if frequencies.last().is_some_and(|&prev| values[0] <= prev) {
            return Err(Error::NonAscendingFrequency { line });
        }
        frequencies.push(values[0]);
        magnitudes.push(values[1]);
        if with_phase {
            phases.push(values[2]);
        }
    }
    if frequencies.len() < 2 {
        return Err(Error::TooFewRows(frequencies.len()));
    }
    FrequencyResponse::new(label, frequencies, magnitudes, with_phase.then_some(phases))
}

/// Renders a sweep as CSV. Values use the shortest representation that
/// parses back to the identical `f64`.
pub fn emit_sweep(curve: &FrequencyResponse) -> Vec<u8> {
    let mut out = String::new();
    match curve.phases() {
        Some(phases) => {
            out.push_str("frequency_hz,magnitude,phase_deg\n");
            for ((f, m), p) in curve.frequencies().iter().zip(curve.magnitudes()).zip(phases) {
                out.push_str(&format!("{f:?},{m:?},{p:?}\n"));
            }
        }
        None => {
            out.push_str("frequency_hz,magnitude\n");
            for (f, m) in curve.frequencies().iter().zip(curve.magnitudes()) {
                out.push_str(&format!("{f:?},{m:?}\n"));
            }
        }
    }
    out.into_bytes()
}

pub fn read_sweep(path: &Path) -> Result<FrequencyResponse> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_sweep(&bytes, &label).map_err(|e| e.in_file(path))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestCase {
    pub path: PathBuf,
    pub severity_percent: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub reference: PathBuf,
    pub cases: Vec<ManifestCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
}

impl DatasetManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let manifest: DatasetManifest =
            serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        manifest.check()?;
        Ok(manifest)
    }

    fn check(&self) -> Result<()> {
        for c in &self.cases {
            if !(c.severity_percent > 0.0 && c.severity_percent.is_finite()) {
                return Err(Error::InvalidSeverity(c.severity_percent));
            }
        }
        for (i, a) in self.cases.iter().enumerate() {
            if self.cases[..i]
                .iter()
                .any(|b| b.severity_percent == a.severity_percent)
            {
                return Err(Error::DuplicateSeverity(a.severity_percent));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// Loads a manifest and every sweep it names, then aligns them into a
/// family. Relative paths resolve against the manifest's directory.
pub fn load_family(manifest_path: &Path) -> Result<(DatasetManifest, CurveFamily)> {
    let text = fs::read_to_string(manifest_path).map_err(|source| Error::Io {
        path: manifest_path.to_path_buf(),
        source,
    })?;
    let manifest = DatasetManifest::parse(&text).map_err(|e| e.in_file(manifest_path))?;
    let base = manifest_path.parent().unwrap_or(Path::new(""));
    let reference = read_sweep(&base.join(&manifest.reference))?.with_label("reference");
    let cases = manifest
        .cases
        .iter()
        .map(|c| {
            Ok((
                read_sweep(&base.join(&c.path))?.with_label(&c.label),
                c.severity_percent,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let family = align_family(reference, cases).map_err(|e| e.in_file(manifest_path))?;
    Ok((manifest, family))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_rows() {
        let c = parse_sweep(b"frequency_hz,magnitude\n20,5.1\n40,4.9\n", "x").unwrap();
        assert_eq!(c.frequencies(), &[20.0, 40.0]);
        assert_eq!(c.magnitudes(), &[5.1, 4.9]);
        assert!(c.phases().is_none());
    }

    #[test]
    fn parses_phase_column() {
        let c = parse_sweep(b"frequency_hz,magnitude,phase_deg\n20,5,-80\n40,4,-70.5\n", "x").unwrap();
        assert_eq!(c.phases().unwrap(), &[-80.0, -70.5]);
    }

    #[test]
    fn rejects_disordered_rows_with_line() {
        let err = parse_sweep(b"frequency_hz,magnitude\n20,5\n40,4\n30,3\n", "x").unwrap_err();
        assert!(matches!(err, Error::NonAscendingFrequency { line: 4 }), "{err:?}");
    }

    #[test]
    fn header_and_row_errors() {
        assert!(matches!(
            parse_sweep(b"", "x"),
            Err(Error::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_sweep(b"freq,mag\n1,2\n", "x"),
            Err(Error::MalformedHeader { line: 1 })
        ));
        assert!(matches!(
            parse_sweep(b"frequency_hz,magnitude\n1,2\n2,abc\n", "x"),
            Err(Error::BadNumber { line: 3, .. })
        ));
        assert!(matches!(
            parse_sweep(b"frequency_hz,magnitude\n1,2\n2,3,4\n", "x"),
            Err(Error::BadNumber { line: 3, .. })
        ));
        assert!(matches!(
            parse_sweep(b"frequency_hz,magnitude\n1,2\n", "x"),
            Err(Error::TooFewRows(1))
        ));
        assert!(matches!(
            parse_sweep(b"frequency_hz,magnitude\n0,2\n1,2\n", "x"),
            Err(Error::BadNumber { line: 2, .. })
        ));
    }

    #[test]
    fn emit_parse_round_trip_is_exact() {
        let c = FrequencyResponse::new(
            "x",
            vec![20.0, 20.000000000000004, 1e7],
            vec![0.1 + 0.2, 1e-300, 12345.678],
            Some(vec![-89.99999, 0.0, 45.5]),
        )
        .unwrap();
        assert_eq!(parse_sweep(&emit_sweep(&c), "x").unwrap(), c);
    }

    #[test]
    fn manifest_checks() {
        let m = DatasetManifest::parse(
            r#"{"reference":"r.csv","cases":[{"path":"a.csv","severity_percent":25,"label":"a"}],"normalization":"signed"}"#,
        )
        .unwrap();
        assert_eq!(m.normalization, Some(Normalization::Signed));
        let dup = r#"{"reference":"r.csv","cases":[
            {"path":"a.csv","severity_percent":25,"label":"a"},
            {"path":"b.csv","severity_percent":25,"label":"b"}]}"#;
        assert_eq!(
            DatasetManifest::parse(dup).unwrap_err().code(),
            "DuplicateSeverity"
        );
        assert_eq!(DatasetManifest::parse("{}").unwrap_err().code(), "Manifest");
    }
}
