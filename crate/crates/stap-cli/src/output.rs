//! CSV assembly and atomic file writes. Every artifact starts with
//! `#`-prefixed provenance comments (tool version, command, resolved
//! parameters, optional timestamp), then an RFC-4180-style header row and
//! numeric rows at 12 significant digits.

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::{runtime_err, CliError};

/// 12 significant digits, locale-free, stable across runs.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    // normalize -0.0 so reruns can't differ in sign-of-zero
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// Quote a field if it contains commas/quotes (error markers in sweeps).
pub fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub struct CsvBuilder {
    lines: Vec<String>,
    header_done: bool,
}

impl CsvBuilder {
    /// Start a document with the tool/command provenance lines.
    pub fn new(command: &str, with_timestamp: bool) -> Self {
        let mut lines = vec![format!("# stap {} (command: {command})", env!("CARGO_PKG_VERSION"))];
        if with_timestamp {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            lines.push(format!("# generated_unix_seconds: {secs}"));
        }
        CsvBuilder { lines, header_done: false }
    }

    /// One resolved-parameter comment line.
    pub fn param(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        assert!(!self.header_done, "parameters must precede the header row");
        self.lines.push(format!("# {key} = {value}"));
        self
    }

    pub fn param_f64(&mut self, key: &str, value: f64) -> &mut Self {
        self.param(key, sig12(value))
    }

    /// Free-form comment (warnings and advisories).
    pub fn comment(&mut self, text: &str) -> &mut Self {
        for line in text.lines() {
            self.lines.push(format!("# {line}"));
        }
        self
    }

    pub fn header(&mut self, columns: &[&str]) -> &mut Self {
        self.lines.push(columns.join(","));
        self.header_done = true;
        self
    }

    pub fn row(&mut self, fields: &[String]) -> &mut Self {
        debug_assert!(self.header_done, "rows must follow the header");
        self.lines.push(fields.join(","));
        self
    }

    pub fn numeric_row(&mut self, values: &[f64]) -> &mut Self {
        let fields: Vec<String> = values.iter().map(|v| sig12(*v)).collect();
        self.row(&fields)
    }

    pub fn contents(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    /// Write via a temporary sibling + rename, so readers never observe a
    /// half-written artifact.
    pub fn write_atomic(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, &self.contents())
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let file_name = path
        .file_name()
        .ok_or_else(|| runtime_err(format!("output path {} has no file name", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)
        .map_err(|e| runtime_err(format!("cannot write {}: {e}", tmp.display())))?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(runtime_err(format!("cannot move output into {}: {e}", path.display())));
    }
    Ok(())
}
