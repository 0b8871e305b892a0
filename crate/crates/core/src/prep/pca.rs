use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Principal axes fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `k × d`, orthonormal rows, largest-variance first.
    pub components: Vec<Vec<f64>>,
    /// Sample variance (N − 1 denominator) along each component.
    pub explained_variance: Vec<f64>,
    /// Sum of per-feature sample variances of the training rows.
    pub total_variance: f64,
}

impl PcaModel {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn input_dim(&self) -> usize {
        self.mean.len()
    }
}

fn check_matrix(rows: &[Vec<f64>], d: usize) -> Result<()> {
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
        return Err(Error::Data(format!(
            "row {i} has {} features, expected {d}",
            r.len()
        )));
    }
    Ok(())
}

/// Top-`k` right singular vectors of the mean-centred training matrix.
///
/// Each component is oriented so its largest-magnitude entry is positive.
pub fn pca_fit(train: &[Vec<f64>], k: usize) -> Result<PcaModel> {
    let n = train.len();
    let d = train.first().map_or(0, Vec::len);
    check_matrix(train, d)?;
    if k == 0 || k > n.min(d) {
        return Err(Error::Config(format!(
            "pca_k = {k} must lie in 1..=min(rows, columns) = {}",
            n.min(d)
        )));
    }

    let mut mean = vec![0.0; d];
    for row in train {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);

    let centered = DMatrix::from_fn(n, d, |i, j| train[i][j] - mean[j]);
    let denom = (n - 1) as f64;
    let total_variance = centered.iter().map(|v| v * v).sum::<f64>() / denom;
    if !(total_variance > 0.0) {
        return Err(Error::Data(
            "all training rows are identical; principal components are undefined".into(),
        ));
    }

    let svd = centered.svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::Invariant("SVD did not return right singular vectors".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));

    let mut components = Vec::with_capacity(k);
    let mut explained_variance = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let mut row: Vec<f64> = v_t.row(idx).iter().copied().collect();
        let pivot =
            row.iter().enumerate().fold(
                0,
                |best, (j, v)| if v.abs() > row[best].abs() { j } else { best },
            );
        if row[pivot] < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
        components.push(row);
        let s = svd.singular_values[idx];
        explained_variance.push(s * s / denom);
    }

    Ok(PcaModel {
        mean,
        components,
        explained_variance,
        total_variance,
    })
}

/// `(X − mean) · componentsᵀ`.
pub fn pca_transform(model: &PcaModel, features: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_matrix(features, model.input_dim())?;
    Ok(features
        .iter()
        .map(|row| {
            model
                .components
                .iter()
                .map(|comp| {
                    comp.iter()
                        .zip(row.iter().zip(&model.mean))
                        .map(|(c, (x, m))| c * (x - m))
                        .sum()
                })
                .collect()
        })
        .collect())
}
