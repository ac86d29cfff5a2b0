//! On-disk expansion cache: one JSON record per `(form, prec)`.
//!
//! A request at precision `X` is served from the smallest cached precision
//! `>= X`, truncated. Files are written to a temporary name in the same
//! directory and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use super::record::ExpansionRecord;
use crate::error::{Error, Result};
use crate::fourier::FourierSeries;

#[derive(Clone, Debug)]
pub struct ExpansionCache {
    dir: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn file_key(form: &str) -> String {
    form.replace('*', ".")
}

impl ExpansionCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        Ok(ExpansionCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, form: &str, prec: u32) -> PathBuf {
        self.dir.join(format!("{}-p{prec}.json", file_key(form)))
    }

    /// Cached precisions available for `form`, ascending.
    pub fn precisions(&self, form: &str) -> Result<Vec<u32>> {
        let prefix = format!("{}-p", file_key(form));
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir).map_err(io_err(&self.dir))? {
            let entry = entry.map_err(io_err(&self.dir))?;
            let name = entry.file_name();
            let Some(name) = name.to_str() else { continue };
            if let Some(p) = name
                .strip_prefix(&prefix)
                .and_then(|rest| rest.strip_suffix(".json"))
                .and_then(|p| p.parse::<u32>().ok())
            {
                out.push(p);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn load(&self, form: &str, prec: u32) -> Result<Option<FourierSeries>> {
        let Some(&have) = self.precisions(form)?.iter().find(|&&p| p >= prec) else {
            return Ok(None);
        };
        let path = self.path_for(form, have);
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        let record = ExpansionRecord::from_json(&text)?;
        if record.form != form || record.prec != have {
            return Err(Error::Record(format!(
                "{} does not hold {form} at prec {have}",
                path.display()
            )));
        }
        Ok(Some(record.to_series()?.truncate(prec)))
    }

    pub fn store(&self, form: &str, series: &FourierSeries) -> Result<PathBuf> {
        let path = self.path_for(form, series.prec());
        let text = ExpansionRecord::from_series(form, series).to_json()?;
        let mut tmp = NamedTempFile::new_in(&self.dir).map_err(io_err(&self.dir))?;
        tmp.write_all(text.as_bytes()).map_err(io_err(tmp.path()))?;
        tmp.persist(&path).map_err(|e| Error::Io {
            path: path.clone(),
            source: e.error,
        })?;
        Ok(path)
    }
}
