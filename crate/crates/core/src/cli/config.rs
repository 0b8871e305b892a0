use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzSpec;
use crate::error::{Error, Result};
use crate::featmap::FeatureMapSpec;
use crate::spsa::SpsaConfig;
use crate::vqc::{ParityRule, Readout, VqcConfig};

/// One JSON document describing a full run. Relative paths are resolved
/// against the directory containing the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub data: DataConfig,
    pub prep: PrepConfig,
    pub feature_map: FeatureMapSpec,
    pub ansatz: AnsatzSpec,
    pub classifier: ClassifierConfig,
    pub spsa: SpsaConfig,
    pub output_dir: PathBuf,
    #[serde(skip)]
    base_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub path: PathBuf,
    pub label_column: String,
    pub positive_label: String,
    #[serde(default)]
    pub id_column: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrepConfig {
    #[serde(default = "default_pca_k")]
    pub pca_k: usize,
    #[serde(default = "default_test_fraction")]
    pub test_fraction: f64,
    pub split_seed: u64,
}

fn default_pca_k() -> usize {
    5
}

fn default_test_fraction() -> f64 {
    0.2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierConfig {
    #[serde(default = "default_measured")]
    pub measured_qubits: Vec<usize>,
    /// Readout used inside the training loss.
    #[serde(default = "default_train_readout")]
    pub train_readout: Readout,
    /// Readout used for held-out predictions and metrics.
    #[serde(default = "default_eval_readout")]
    pub eval_readout: Readout,
    /// Base seed for shot sampling.
    pub seed: u64,
    /// Seed for the initial ansatz parameters.
    pub init_seed: u64,
    #[serde(default = "default_eps")]
    pub loss_clip_epsilon: f64,
    #[serde(default)]
    pub parity: ParityRule,
}

fn default_measured() -> Vec<usize> {
    vec![0, 1]
}

fn default_train_readout() -> Readout {
    Readout::Exact
}

fn default_eval_readout() -> Readout {
    Readout::Shots(1024)
}

fn default_eps() -> f64 {
    1e-9
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Error::json(path, e))?;
        cfg.base_dir = path.parent().unwrap_or(Path::new("")).to_path_buf();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Directory that relative paths are resolved against.
    pub fn with_base_dir(mut self, base: impl Into<PathBuf>) -> Self {
        self.base_dir = base.into();
        self
    }

    pub fn data_path(&self) -> PathBuf {
        resolve(&self.base_dir, &self.data.path)
    }

    pub fn output_path(&self) -> PathBuf {
        resolve(&self.base_dir, &self.output_dir)
    }

    pub fn validate(&self) -> Result<()> {
        if self.prep.pca_k != self.feature_map.n_qubits {
            return Err(Error::Config(format!(
                "prep.pca_k ({}) must equal the qubit count ({})",
                self.prep.pca_k, self.feature_map.n_qubits
            )));
        }
        self.spsa.validate()?;
        self.vqc_config(self.classifier.train_readout).validate()?;
        self.vqc_config(self.classifier.eval_readout).validate()
    }

    pub fn vqc_config(&self, readout: Readout) -> VqcConfig {
        VqcConfig {
            feature_map: self.feature_map,
            ansatz: self.ansatz,
            measured_qubits: self.classifier.measured_qubits.clone(),
            readout,
            seed: self.classifier.seed,
            loss_clip_epsilon: self.classifier.loss_clip_epsilon,
            parity: self.classifier.parity,
        }
    }

    /// Defaults for a five-qubit run on `data_path`.
    pub fn template(data_path: &str, label_column: &str, positive_label: &str) -> Self {
        use crate::featmap::Entanglement;
        RunConfig {
            data: DataConfig {
                path: data_path.into(),
                label_column: label_column.into(),
                positive_label: positive_label.into(),
                id_column: None,
            },
            prep: PrepConfig {
                pca_k: 5,
                test_fraction: 0.2,
                split_seed: 1,
            },
            feature_map: FeatureMapSpec::new(5, 1, Entanglement::Full),
            ansatz: AnsatzSpec::new(5, 2, Entanglement::Linear),
            classifier: ClassifierConfig {
                measured_qubits: default_measured(),
                train_readout: Readout::Exact,
                eval_readout: Readout::Shots(1024),
                seed: 2,
                init_seed: 3,
                loss_clip_epsilon: default_eps(),
                parity: ParityRule::EvenIsAd,
            },
            spsa: SpsaConfig::new(4),
            output_dir: "run".into(),
            base_dir: PathBuf::new(),
        }
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
