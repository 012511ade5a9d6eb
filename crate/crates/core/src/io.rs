//! QDM matrix files and separability reports.
//!
//! QDM v1 is a plain-text density matrix format:
//!
//! ```text
//! qdm 1
//! qubits 2
//! 0.125+0i 0+0i 0+0i 0+0i
//! 0+0i 0.375+0i -0.25+0i 0+0i
//! 0+0i -0.25+0i 0.375+0i 0+0i
//! 0+0i 0+0i 0+0i 0.125+0i
//! ```
//!
//! Each entry is `<re><sign><im>i`. Lines whose first non-blank character is
//! `#` are comments. Numbers are written in their shortest round-trip decimal
//! form, switching to exponent notation outside `[1e-5, 1e16)`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::criteria::{SeparabilityReport, Verdict};
use crate::linalg::ComplexMatrix;
use crate::state::{validate_density, DensityMatrix, StateError};

/// Largest qubit count a QDM header may declare.
pub const MAX_QDM_QUBITS: usize = 14;

#[derive(Debug, Error)]
pub enum QdmError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid density matrix: {0}")]
    Validation(#[from] StateError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> QdmError {
    QdmError::Parse { line, column, message: message.into() }
}

/// Shortest round-trip decimal for `x`; negative zero prints as `0`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

fn parse_real(text: &str) -> Option<f64> {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    // Rust's float parser also takes "inf"/"nan"; only digits, '.', and exponents are allowed here.
    if body.is_empty() || !body.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
        return None;
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses one `<re><sign><im>i` token.
pub fn parse_complex(token: &str) -> Result<Complex64, String> {
    let malformed = || format!("malformed complex number {token:?}; expected <re><sign><im>i such as 0.25-0.5i");
    let body = token.strip_suffix('i').ok_or_else(malformed)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(malformed)?;
    let re = parse_real(&body[..split]).ok_or_else(malformed)?;
    let im = parse_real(&body[split..]).ok_or_else(malformed)?;
    Ok(Complex64::new(re, im))
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..k]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses QDM text into a matrix without checking density-matrix invariants.
pub fn parse_qdm(text: &str) -> Result<ComplexMatrix, QdmError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l)).filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('#')
    });
    let last_line = text.lines().count().max(1);

    let (ln, header) = lines.next().ok_or_else(|| parse_error(last_line, 1, "empty file; expected `qdm 1`"))?;
    match tokens(header).as_slice() {
        [(_, "qdm"), (_, "1")] => {}
        [(_, "qdm"), (col, v)] => return Err(parse_error(ln, *col, format!("unsupported QDM version {v:?}"))),
        _ => return Err(parse_error(ln, 1, "expected header `qdm 1`")),
    }

    let (ln, qubits_line) = lines.next().ok_or_else(|| parse_error(last_line, 1, "missing `qubits N` line"))?;
    let num_qubits = match tokens(qubits_line).as_slice() {
        [(_, "qubits"), (col, n)] => match n.parse::<usize>() {
            Ok(n) if (1..=MAX_QDM_QUBITS).contains(&n) => n,
            _ => return Err(parse_error(ln, *col, format!("qubit count must be an integer in 1..={MAX_QDM_QUBITS}"))),
        },
        _ => return Err(parse_error(ln, 1, "expected `qubits N`")),
    };

    let dim = 1usize << num_qubits;
    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_error(last_line, 1, format!("expected {dim} matrix rows, found {row}")))?;
        let toks = tokens(line);
        if toks.len() != dim {
            let col = toks.get(dim).map_or(line.len() + 1, |t| t.0);
            return Err(parse_error(ln, col, format!("expected {dim} entries, found {}", toks.len())));
        }
        for (col, tok) in toks {
            data.push(parse_complex(tok).map_err(|m| parse_error(ln, col, m))?);
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_error(ln, 1, "unexpected content after the last matrix row"));
    }
    Ok(ComplexMatrix::from_vec(dim, data).expect("square and finite by construction"))
}

/// QDM text for a density matrix.
pub fn to_qdm_string(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let mut out = format!("qdm 1\nqubits {}\n", rho.num_qubits());
    for r in 0..m.dim() {
        let row: Vec<String> = m.row(r).iter().map(|&z| format_complex(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn save_matrix(rho: &DensityMatrix, path: impl AsRef<Path>) -> Result<(), QdmError> {
    fs::write(path, to_qdm_string(rho))?;
    Ok(())
}

/// Reads a QDM file and validates it as a density matrix at tolerance `tol`.
pub fn load_matrix(path: impl AsRef<Path>, tol: f64) -> Result<DensityMatrix, QdmError> {
    let text = fs::read_to_string(path)?;
    read_density(&text, tol)
}

pub fn read_density(text: &str, tol: f64) -> Result<DensityMatrix, QdmError> {
    Ok(validate_density(parse_qdm(text)?, tol)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct VerdictJson {
    partition: String,
    min_pt_eigenvalue: f64,
    reduced_separable: bool,
    verdict: &'static str,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        VerdictJson {
            partition: v.partition.to_string(),
            min_pt_eigenvalue: v.min_pt_eigenvalue,
            reduced_separable: v.reduced_separable(),
            verdict: v.kind.as_str(),
        }
    }
}

#[derive(Serialize)]
struct ReportJson {
    num_qubits: usize,
    tolerance: f64,
    partitions: Vec<VerdictJson>,
    entangled: bool,
}

fn verdict_line(v: &Verdict) -> String {
    format!(
        "{}: {} (min PT eig {})",
        v.partition,
        v.kind.as_str().to_ascii_uppercase(),
        format_real(v.min_pt_eigenvalue)
    )
}

/// Renders a single verdict; JSON uses the same object as a report entry.
pub fn write_verdict(v: &Verdict, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => verdict_line(v) + "\n",
        ReportFormat::Json => {
            serde_json::to_string_pretty(&VerdictJson::from(v)).expect("plain data serialises") + "\n"
        }
    }
}

pub fn write_report(report: &SeparabilityReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.verdicts.iter().fold(String::new(), |mut out, v| {
            let _ = writeln!(out, "{}", verdict_line(v));
            out
        }),
        ReportFormat::Json => {
            let json = ReportJson {
                num_qubits: report.num_qubits,
                tolerance: report.tolerance,
                partitions: report.verdicts.iter().map(VerdictJson::from).collect(),
                entangled: report.entangled(),
            };
            serde_json::to_string_pretty(&json).expect("plain data serialises") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{analyze_all, DEFAULT_PPT_TOL};
    use crate::state::{
        maximally_mixed, random_density, tripartite_example, werner, TripartiteExample, DEFAULT_STATE_TOL,
    };

    #[test]
    fn werner_file_layout() {
        let text = to_qdm_string(&werner(0.5).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "qdm 1");
        assert_eq!(lines[1], "qubits 2");
        assert!(lines[2].starts_with("0.125+0i"));
        assert_eq!(lines[3], "0+0i 0.375+0i -0.25+0i 0+0i");
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn complex_token_formats() {
        assert_eq!(format_complex(Complex64::new(0.25, -0.5)), "0.25-0.5i");
        assert_eq!(format_complex(Complex64::new(-0.0, -0.0)), "0+0i");
        assert_eq!(format_complex(Complex64::new(1e-20, 3.5e20)), "1e-20+3.5e20i");
        assert_eq!(format_complex(Complex64::new(0.1, 1.0 / 3.0)), "0.1+0.3333333333333333i");
    }

    #[test]
    fn complex_token_parsing() {
        assert_eq!(parse_complex("0.25-0.5i").unwrap(), Complex64::new(0.25, -0.5));
        assert_eq!(parse_complex("-1e-3+2E+2i").unwrap(), Complex64::new(-1e-3, 200.0));
        assert_eq!(parse_complex("+1-0i").unwrap(), Complex64::new(1.0, 0.0));
        for bad in ["1+i2", "1+i", "0.5", "i", "+0.5i", "nan+0i", "1+infi", "1e+0i", "--1+0i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn parse_error_positions() {
        let text = "qdm 1\nqubits 1\n1+0i 0+0i\n0+0i 1+i2\n";
        match parse_qdm(text) {
            Err(QdmError::Parse { line, column, .. }) => assert_eq!((line, column), (4, 6)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_qdm("qdm 2\nqubits 1\n") {
            Err(QdmError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_qdm("qdm 1\nqubits 1\n1+0i\n0+0i 0+0i\n") {
            Err(QdmError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_qdm("qdm 1\nqubits 1\n1+0i 0+0i\n") {
            Err(QdmError::Parse { message, .. }) => assert!(message.contains("expected 2 matrix rows")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_qdm("qdm 1\nqubits 1\n1+0i 0+0i\n0+0i 0+0i\nextra\n"),
            Err(QdmError::Parse { line: 5, .. })
        ));
        assert!(matches!(parse_qdm(""), Err(QdmError::Parse { .. })));
        assert!(matches!(parse_qdm("qdm 1\nqubits 0\n"), Err(QdmError::Parse { line: 2, column: 8, .. })));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# generated\nqdm 1\n\nqubits 1\n  # first row\n0.5+0i 0+0i\n0+0i 0.5+0i\n";
        let rho = read_density(text, DEFAULT_STATE_TOL).unwrap();
        assert_eq!(rho.matrix(), &ComplexMatrix::identity(2).scale(0.5));
    }

    #[test]
    fn load_reports_validation_errors() {
        let text = "qdm 1\nqubits 1\n0.5+0i 0+0i\n0+0i 0.4+0i\n";
        assert!(matches!(
            read_density(text, DEFAULT_STATE_TOL),
            Err(QdmError::Validation(StateError::TraceNotOne { .. }))
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rho.qdm");
        for seed in 0..20 {
            let rho = random_density(1 + (seed as usize % 4), seed).unwrap();
            save_matrix(&rho, &path).unwrap();
            let back = load_matrix(&path, DEFAULT_STATE_TOL).unwrap();
            assert_eq!(back, rho);
        }
        assert!(matches!(load_matrix(dir.path().join("missing.qdm"), 1e-10), Err(QdmError::Io(_))));
    }

    #[test]
    fn text_report_lines() {
        let report = analyze_all(&tripartite_example(TripartiteExample::Prime, 0.5).unwrap(), DEFAULT_PPT_TOL).unwrap();
        let text = write_report(&report, ReportFormat::Text);
        assert_eq!(text.lines().next().unwrap(), "A|BC: INSEPARABLE (min PT eig -0.125)");
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn json_report_shape() {
        let report = analyze_all(&tripartite_example(TripartiteExample::Prime, 0.5).unwrap(), DEFAULT_PPT_TOL).unwrap();
        let json = write_report(&report, ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["num_qubits"], 3);
        assert_eq!(v["tolerance"], 1e-9);
        assert_eq!(v["entangled"], true);
        let first = &v["partitions"][0];
        assert_eq!(first["partition"], "A|BC");
        assert_eq!(first["min_pt_eigenvalue"], -0.125);
        assert_eq!(first["reduced_separable"], false);
        assert_eq!(first["verdict"], "inseparable");
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4);
        // Same input, same bytes.
        assert_eq!(json, write_report(&report, ReportFormat::Json));
        let pos = |k: &str| json.find(k).unwrap();
        assert!(pos("\"num_qubits\"") < pos("\"tolerance\"") && pos("\"partitions\"") < pos("\"entangled\""));

        let mixed = analyze_all(&maximally_mixed(3).unwrap(), DEFAULT_PPT_TOL).unwrap();
        let v: serde_json::Value = serde_json::from_str(&write_report(&mixed, ReportFormat::Json)).unwrap();
        assert_eq!(v["entangled"], false);
    }
}
