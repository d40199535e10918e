//! CSV input and output. Outputs are comma separated, LF terminated, UTF-8,
//! always with a header row; floats use Rust's shortest round-trip form.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Reads one numeric column. A file whose first non-blank line parses as a
/// number has no header; otherwise the first line is the header and `column`
/// selects a field by name (the first field when `column` is `None`).
/// Thousands separators, NaN and infinities are rejected.
pub fn ingest_csv(path: &Path, column: Option<&str>) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line: line as u64,
        message,
    };

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .peekable();

    let Some(&(first_no, first)) = lines.peek() else {
        return Ok(Vec::new());
    };
    let first_fields = split(first);
    let headerless = parse_number(first_fields[0]).is_some();
    let (index, width) = if headerless {
        if let Some(name) = column {
            return Err(parse_err(
                first_no,
                format!("column {name:?} requested but the file has no header"),
            ));
        }
        (0, first_fields.len())
    } else {
        lines.next();
        let index = match column {
            None => 0,
            Some(name) => first_fields
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| parse_err(first_no, format!("no column named {name:?}")))?,
        };
        (index, first_fields.len())
    };

    lines
        .map(|(no, line)| {
            let fields = split(line);
            if fields.len() != width {
                return Err(parse_err(
                    no,
                    format!(
                        "expected {width} field(s), found {} (thousands separators are not accepted)",
                        fields.len()
                    ),
                ));
            }
            let cell = fields[index];
            parse_number(cell).ok_or_else(|| parse_err(no, format!("not a finite number: {cell:?}")))
        })
        .collect()
}

fn split(line: &str) -> Vec<&str> {
    line.split(',').collect()
}

fn parse_number(cell: &str) -> Option<f64> {
    let cell = cell.trim();
    if cell.is_empty() || !cell.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
        return None;
    }
    cell.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads a two-column (t, S) survival table, with or without a header.
pub fn ingest_pairs(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let fields = split(line);
        let parsed: Option<Vec<f64>> = fields.iter().map(|f| parse_number(f)).collect();
        match (parsed, fields.len()) {
            (Some(v), 2) => {
                xs.push(v[0]);
                ys.push(v[1]);
            }
            (None, 2) if xs.is_empty() && i == first_nonblank(&text) => {}
            _ => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: (i + 1) as u64,
                    message: format!("expected two numeric fields, got {line:?}"),
                })
            }
        }
    }
    Ok((xs, ys))
}

fn first_nonblank(text: &str) -> usize {
    text.lines().position(|l| !l.trim().is_empty()).unwrap_or(0)
}

pub fn fmt(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt).unwrap_or_default()
}

/// Renders a header and rows as CSV text.
pub fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut f = fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    f.write_all(contents.as_bytes()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
