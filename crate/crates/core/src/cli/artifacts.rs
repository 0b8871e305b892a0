use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub const PREP: &str = "prep.json";
pub const SPLIT: &str = "split.json";
pub const MODEL: &str = "model.json";
pub const LOSS_HISTORY: &str = "loss_history.csv";
pub const METRICS: &str = "metrics.json";
pub const PREDICTIONS: &str = "predictions.csv";
pub const SCATTER: &str = "scatter2d.csv";
pub const KERNEL_TRAIN: &str = "kernel_train.csv";
pub const KERNEL_TEST: &str = "kernel_test.csv";
pub const CONFIG_ECHO: &str = "config.json";
pub const REPORT: &str = "report.json";

/// An output directory whose files are written once. With `force`, existing
/// files are replaced instead.
#[derive(Debug, Clone)]
pub struct OutputDir {
    root: PathBuf,
    force: bool,
}

impl OutputDir {
    pub fn new(root: impl Into<PathBuf>, force: bool) -> Self {
        OutputDir {
            root: root.into(),
            force,
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn exists(&self, name: &str) -> bool {
        self.path(name).exists()
    }

    /// Fails before any work is done if one of `names` is already present.
    pub fn claim(&self, names: &[&str]) -> Result<()> {
        if self.force {
            return Ok(());
        }
        for name in names {
            let p = self.path(name);
            if p.exists() {
                return Err(Error::Config(format!(
                    "{} already exists; pass --force to overwrite",
                    p.display()
                )));
            }
        }
        Ok(())
    }

    pub fn write(&self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::create_dir_all(&self.root).map_err(|e| Error::io(&self.root, e))?;
        let p = self.path(name);
        let mut opts = OpenOptions::new();
        opts.write(true);
        if self.force {
            opts.create(true).truncate(true);
        } else {
            opts.create_new(true);
        }
        let mut f = opts.open(&p).map_err(|e| match e.kind() {
            std::io::ErrorKind::AlreadyExists => Error::Config(format!(
                "{} already exists; pass --force to overwrite",
                p.display()
            )),
            _ => Error::io(&p, e),
        })?;
        f.write_all(bytes).map_err(|e| Error::io(&p, e))
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        let mut text =
            serde_json::to_string_pretty(value).map_err(|e| Error::json(self.path(name), e))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn read_json<T: DeserializeOwned>(&self, name: &str) -> Result<T> {
        let p = self.path(name);
        let text = fs::read_to_string(&p).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::Config(format!(
                "{} not found; run the earlier pipeline stage first",
                p.display()
            )),
            _ => Error::io(&p, e),
        })?;
        serde_json::from_str(&text).map_err(|e| Error::json(&p, e))
    }
}

/// CSV text builder with `\n` line endings.
pub struct CsvText {
    writer: csv::Writer<Vec<u8>>,
}

impl CsvText {
    pub fn new(header: &[&str]) -> Result<Self> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(CsvText { writer })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields)?;
        Ok(())
    }

    pub fn finish(self) -> Result<Vec<u8>> {
        self.writer
            .into_inner()
            .map_err(|e| Error::Invariant(format!("CSV buffer flush failed: {e}")))
    }
}
