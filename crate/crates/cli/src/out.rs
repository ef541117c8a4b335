//! Output formatting: reduced `p/q` strings for exact values, 17 significant
//! digits for floats, LF-terminated CSV, and pretty JSON with declaration-
//! order keys. Re-running a command with identical flags must produce
//! byte-identical files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use linecut::Rational;

pub fn rat_str(r: &Rational) -> String {
    r.to_string()
}

pub fn f64_str(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

/// Assembles a CSV document: header plus rows, comma-separated, LF endings.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut doc = header.join(",");
    doc.push('\n');
    for row in rows {
        doc.push_str(&row.join(","));
        doc.push('\n');
    }
    doc
}

pub fn json_document<T: serde::Serialize>(value: &T) -> String {
    let mut doc = serde_json::to_string_pretty(value).expect("serializable report");
    doc.push('\n');
    doc
}
