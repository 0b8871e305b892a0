use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-feature minimum and maximum of the training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMaxModel {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

pub fn minmax_fit(train: &[Vec<f64>]) -> Result<MinMaxModel> {
    let d = train
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::Data("cannot fit min-max scaling on zero rows".into()))?;
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for (i, row) in train.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Data(format!(
                "row {i} has {} features, expected {d}",
                row.len()
            )));
        }
        for j in 0..d {
            min[j] = min[j].min(row[j]);
            max[j] = max[j].max(row[j]);
        }
    }
    Ok(MinMaxModel { min, max })
}

/// `(x − min) / (max − min)` clipped to `[0, 1]`; constant features map to 0.
pub fn minmax_transform(model: &MinMaxModel, features: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = model.min.len();
    features
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != d {
                return Err(Error::Data(format!(
                    "row {i} has {} features, expected {d}",
                    row.len()
                )));
            }
            Ok(row
                .iter()
                .zip(model.min.iter().zip(&model.max))
                .map(|(&x, (&lo, &hi))| {
                    if hi > lo {
                        ((x - lo) / (hi - lo)).clamp(0.0, 1.0)
                    } else {
                        0.0
                    }
                })
                .collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(values: &[f64]) -> Vec<Vec<f64>> {
        values.iter().map(|&v| vec![v]).collect()
    }

    #[test]
    fn scales_to_unit_interval() {
        let rows = column(&[0.0, 5.0, 10.0]);
        let m = minmax_fit(&rows).unwrap();
        assert_eq!(
            minmax_transform(&m, &rows).unwrap(),
            column(&[0.0, 0.5, 1.0])
        );
    }

    #[test]
    fn constant_column_maps_to_zero() {
        let rows = column(&[7.0, 7.0, 7.0]);
        let m = minmax_fit(&rows).unwrap();
        assert_eq!(
            minmax_transform(&m, &rows).unwrap(),
            column(&[0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn out_of_range_is_clipped() {
        let m = minmax_fit(&column(&[0.0, 10.0])).unwrap();
        assert_eq!(
            minmax_transform(&m, &column(&[15.0, -3.0])).unwrap(),
            column(&[1.0, 0.0])
        );
    }

    #[test]
    fn empty_fit_fails() {
        assert!(minmax_fit(&[]).is_err());
    }
}
