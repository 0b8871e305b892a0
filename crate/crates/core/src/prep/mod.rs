//! Tabular ingestion and preprocessing: CSV → one-hot → split → PCA → min-max.

mod encode;
mod minmax;
mod pca;
mod split;
mod table;

pub use encode::{one_hot_encode, ColumnEncoding, EncodingSchema, MAX_CATEGORIES};
pub use minmax::{minmax_fit, minmax_transform, MinMaxModel};
pub use pca::{pca_fit, pca_transform, PcaModel};
pub use split::{stratified_split, Split};
pub use table::{load_csv, RawTable};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real-valued samples with binary labels (AD = 1, NON_AD = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
    pub ids: Vec<String>,
    pub feature_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset with positional ids (`"0"`, `"1"`, …) and feature names
    /// `f0`, `f1`, ….
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<u8>) -> Result<Self> {
        let d = features.first().map_or(0, Vec::len);
        let ids = (0..features.len()).map(|i| i.to_string()).collect();
        let names = (0..d).map(|j| format!("f{j}")).collect();
        Self::with_metadata(features, labels, ids, names)
    }

    pub fn with_metadata(
        features: Vec<Vec<f64>>,
        labels: Vec<u8>,
        ids: Vec<String>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if features.len() != labels.len() || ids.len() != labels.len() {
            return Err(Error::Data(format!(
                "{} feature rows, {} labels, {} ids",
                features.len(),
                labels.len(),
                ids.len()
            )));
        }
        for (i, row) in features.iter().enumerate() {
            if row.len() != feature_names.len() {
                return Err(Error::Data(format!(
                    "row {i} has {} features, expected {}",
                    row.len(),
                    feature_names.len()
                )));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Data(format!("row {i}, feature {j} is not finite")));
            }
        }
        if let Some(&bad) = labels.iter().find(|&&y| y > 1) {
            return Err(Error::Data(format!("label {bad} is not binary")));
        }
        Ok(Dataset {
            features,
            labels,
            ids,
            feature_names,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// `(negatives, positives)`.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&y| y == 1).count();
        (self.len() - pos, pos)
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            ids: indices.iter().map(|&i| self.ids[i].clone()).collect(),
            feature_names: self.feature_names.clone(),
        }
    }

    /// Same rows and labels with a replacement feature matrix.
    pub fn with_features(&self, features: Vec<Vec<f64>>, names: Vec<String>) -> Result<Dataset> {
        Dataset::with_metadata(features, self.labels.clone(), self.ids.clone(), names)
    }
}

/// Fitted preprocessing chain: column encoding, PCA, then min-max scaling.
///
/// PCA and min-max statistics come from training rows only; the fitted models
/// are never modified by `transform`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preprocessor {
    pub schema: EncodingSchema,
    pub pca: PcaModel,
    pub minmax: MinMaxModel,
}

impl Preprocessor {
    /// Fits PCA to `k` components on `train`, then min-max on the projected rows.
    pub fn fit(schema: EncodingSchema, train: &Dataset, k: usize) -> Result<Self> {
        if train.n_features() != schema.feature_names().len() {
            return Err(Error::Data(format!(
                "training set has {} features but the encoding produces {}",
                train.n_features(),
                schema.feature_names().len()
            )));
        }
        let pca = pca_fit(&train.features, k)?;
        let projected = pca_transform(&pca, &train.features)?;
        let minmax = minmax_fit(&projected)?;
        Ok(Preprocessor {
            schema,
            pca,
            minmax,
        })
    }

    pub fn n_components(&self) -> usize {
        self.pca.k()
    }

    pub fn component_names(&self) -> Vec<String> {
        (1..=self.n_components())
            .map(|i| format!("pc{i}"))
            .collect()
    }

    /// PCA projection without scaling.
    pub fn project(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        pca_transform(&self.pca, rows)
    }

    /// PCA projection followed by min-max scaling into `[0, 1]`.
    pub fn transform_rows(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        minmax_transform(&self.minmax, &self.project(rows)?)
    }

    pub fn transform(&self, ds: &Dataset) -> Result<Dataset> {
        ds.with_features(self.transform_rows(&ds.features)?, self.component_names())
    }

    /// Encodes and transforms a raw table with the stored schema.
    pub fn transform_table(&self, table: &RawTable) -> Result<Dataset> {
        self.transform(&self.schema.transform(table)?)
    }
}
