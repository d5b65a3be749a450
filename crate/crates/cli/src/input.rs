use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use thiserror::Error;

use gaussloop::GaussDiagram;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] gaussloop::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    let name = path.map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
    let io_err = |source| CliError::Io { path: name.clone(), source };
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(io_err),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(io_err)?;
            Ok(s)
        }
    }
}

/// Diagrams of every non-blank, non-comment line, with their line numbers.
pub fn diagrams(path: &Option<PathBuf>) -> Result<Vec<(usize, GaussDiagram)>, CliError> {
    let text = read_text(path.as_deref())?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let code = line.trim();
        if code.is_empty() || code.starts_with('#') {
            continue;
        }
        let d = code.parse::<GaussDiagram>().map_err(|e| {
            let (column, message) = match e {
                gaussloop::Error::Syntax { column, message } => (column, message),
                other => (1, other.to_string()),
            };
            CliError::Parse {
                line: i + 1,
                column,
                message,
            }
        })?;
        out.push((i + 1, d));
    }
    Ok(out)
}
