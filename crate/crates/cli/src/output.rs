//! CSV tables with a `#` comment header.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::{CliError, RunConfig};

/// Full-precision value formatting used in every table.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Table {
    pub title: String,
    /// Extra `# ...` lines after the config echo.
    pub notes: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&'static str]) -> Self {
        Self { title: title.into(), notes: Vec::new(), columns: columns.to_vec(), rows: Vec::new() }
    }

    /// Header: title, config echo, notes, then `# columns: a,b,...`.
    pub fn write(&self, cfg: &RunConfig, dir: &Path, name: &str) -> Result<PathBuf, CliError> {
        let path = dir.join(name);
        let io = |source| CliError::Io { path: path.clone(), source };
        let mut w = BufWriter::new(File::create(&path).map_err(io)?);
        let mut body = String::new();
        body.push_str(&format!("# {}\n", self.title));
        for line in cfg.echo_lines() {
            body.push_str(&line);
            body.push('\n');
        }
        for note in &self.notes {
            body.push_str(&format!("# {note}\n"));
        }
        body.push_str(&format!("# columns: {}\n", self.columns.join(",")));
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            body.push_str(&row.join(","));
            body.push('\n');
        }
        w.write_all(body.as_bytes()).map_err(io)?;
        w.flush().map_err(io)?;
        Ok(path)
    }
}
