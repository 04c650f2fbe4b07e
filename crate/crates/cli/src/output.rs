use std::io::Write;
use std::path::{Path, PathBuf};

use sdrw::dot::to_dot;
use sdrw::io::{to_json, GraphJson};
use sdrw::InterfacedCospan;

use crate::CliError;

pub const OUT_DIR_VAR: &str = "SDRW_OUT_DIR";

pub fn default_dir() -> Option<PathBuf> {
    std::env::var_os(OUT_DIR_VAR)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let err = |e: &dyn std::fmt::Display| CliError::Output(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| err(&e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| err(&e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| err(&e))?;
    tmp.persist(path).map_err(|e| err(&e.error))?;
    Ok(())
}

pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn write(&self, contents: &str) -> Result<(), CliError> {
        match self {
            Sink::Stdout => {
                print!("{contents}");
                Ok(())
            }
            Sink::File(p) => write_file(p, contents),
        }
    }
}

/// Counts the files a demo writes into one directory.
pub struct Written<'a> {
    dir: &'a Path,
    pub count: usize,
}

impl<'a> Written<'a> {
    pub fn new(dir: &'a Path) -> Self {
        Written { dir, count: 0 }
    }

    pub fn text(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        write_file(&self.dir.join(name), contents)?;
        self.count += 1;
        Ok(())
    }

    /// `<name>.json` and `<name>.dot`.
    pub fn cospan(&mut self, name: &str, c: &InterfacedCospan) -> Result<(), CliError> {
        self.text(&format!("{name}.json"), &to_json(&GraphJson::from_cospan(c)))?;
        self.text(&format!("{name}.dot"), &to_dot(c, name))
    }
}
