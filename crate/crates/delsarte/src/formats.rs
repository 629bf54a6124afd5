//! Line-oriented text formats: point multisets and digit point streams.
//!
//! Blank lines and lines starting with `#` are skipped in both.

use std::io::BufRead;

use delsarte_core::delsarte::MultiSubset;
use delsarte_core::Scheme;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("read failed: {0}")]
    Io(String),
    #[error("{0}")]
    Scheme(String),
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

fn content(raw: &str) -> Option<&str> {
    let t = raw.trim();
    (!t.is_empty() && !t.starts_with('#')).then_some(t)
}

/// One point per line as comma-separated coordinate labels with an
/// optional `* k` multiplicity suffix, e.g. `01,10 * 2`.
pub fn parse_multiset(text: &str, scheme: &Scheme) -> Result<MultiSubset, FormatError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let Some(t) = content(raw) else { continue };
        let (label, mult) = match t.split_once('*') {
            Some((l, k)) => {
                let k: u64 = k
                    .trim()
                    .parse()
                    .map_err(|_| at(line, format!("multiplicity `{}` is not a positive integer", k.trim())))?;
                if k == 0 {
                    return Err(at(line, "multiplicity must be positive"));
                }
                (l.trim(), k)
            }
            None => (t, 1),
        };
        let label: String = label.split(',').map(str::trim).collect::<Vec<_>>().join(",");
        let x = scheme
            .point_index(&label)
            .ok_or_else(|| at(line, format!("`{label}` is not a point of the scheme")))?;
        entries.push((x, mult));
    }
    if entries.is_empty() {
        return Err(FormatError::Scheme("point multiset is empty".into()));
    }
    MultiSubset::new(scheme, entries).map_err(|e| FormatError::Scheme(e.to_string()))
}

/// Inverse of [`parse_multiset`].
pub fn format_multiset(y: &MultiSubset, scheme: &Scheme) -> String {
    let mut out = String::new();
    for &(x, k) in y.entries() {
        out.push_str(&scheme.point_label(x));
        if k != 1 {
            out.push_str(&format!(" * {k}"));
        }
        out.push('\n');
    }
    out
}

/// Shape of a digit point: `s` coordinates of `n` base-`v` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointShape {
    pub v: u32,
    pub s: usize,
    pub n: usize,
}

/// One point: `s` whitespace-separated digit strings of length `n`, most
/// significant digit first. Digits above 9 are `a`, `b`, ...
pub fn parse_point(text: &str, shape: PointShape, line: usize) -> Result<Vec<u32>, FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != shape.s {
        return Err(at(line, format!("{} coordinates, expected {}", fields.len(), shape.s)));
    }
    let mut out = Vec::with_capacity(shape.s * shape.n);
    for (c, f) in fields.iter().enumerate() {
        let digits: Vec<char> = f.chars().collect();
        if digits.len() != shape.n {
            return Err(at(
                line,
                format!("coordinate {} has {} digits, expected {}", c + 1, digits.len(), shape.n),
            ));
        }
        for ch in digits {
            match ch.to_digit(36).filter(|&d| d < shape.v) {
                Some(d) => out.push(d),
                None => {
                    return Err(at(
                        line,
                        format!("coordinate {}: `{ch}` is not a base-{} digit", c + 1, shape.v),
                    ))
                }
            }
        }
    }
    Ok(out)
}

pub fn format_point(p: &[u32], shape: PointShape) -> String {
    p.chunks(shape.n.max(1))
        .take(shape.s)
        .map(|c| c.iter().map(|&d| char::from_digit(d, 36).unwrap()).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Read every point of a stream.
pub fn read_points(reader: impl BufRead, shape: PointShape) -> Result<Vec<Vec<u32>>, FormatError> {
    let mut out = Vec::new();
    for (n, raw) in reader.lines().enumerate() {
        let raw = raw.map_err(|e| FormatError::Io(e.to_string()))?;
        if let Some(t) = content(&raw) {
            out.push(parse_point(t, shape, n + 1)?);
        }
    }
    Ok(out)
}

/// Visit points one at a time, for streaming checks.
pub fn for_each_point(
    reader: impl BufRead,
    shape: PointShape,
    mut visit: impl FnMut(Vec<u32>) -> Result<(), FormatError>,
) -> Result<(), FormatError> {
    for (n, raw) in reader.lines().enumerate() {
        let raw = raw.map_err(|e| FormatError::Io(e.to_string()))?;
        if let Some(t) = content(&raw) {
            visit(parse_point(t, shape, n + 1)?)?;
        }
    }
    Ok(())
}
