use crate::error::CliError;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::Internal(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// `dir/name.json` becomes `dir/name.<kind>.json`.
pub fn sibling(path: &Path, kind: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    let ext = path.extension().map_or_else(|| "json".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.{kind}.{ext}"))
}

/// Destination of the primary output; `None` means standard output.
pub struct Sink {
    pub out: Option<PathBuf>,
}

impl Sink {
    pub fn emit(&self, json: &str) -> Result<(), CliError> {
        match &self.out {
            Some(p) => write_atomic(p, json),
            None => {
                print!("{json}");
                Ok(())
            }
        }
    }

    /// Writes a secondary artifact next to the primary output.
    pub fn emit_sibling(&self, kind: &str, json: &str) -> Result<PathBuf, CliError> {
        let base = self
            .out
            .as_ref()
            .ok_or_else(|| CliError::Input(format!("--out is required to write the {kind} file")))?;
        let path = sibling(base, kind);
        write_atomic(&path, json)?;
        Ok(path)
    }

    /// Human-readable line: standard output when JSON goes to a file, standard error otherwise.
    pub fn say(&self, line: &str) {
        if self.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sibling_names() {
        assert_eq!(sibling(Path::new("a/basis.json"), "measure"), PathBuf::from("a/basis.measure.json"));
        assert_eq!(sibling(Path::new("basis"), "points"), PathBuf::from("basis.points.json"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        write_atomic(&p, "1").unwrap();
        write_atomic(&p, "2").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "2");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
