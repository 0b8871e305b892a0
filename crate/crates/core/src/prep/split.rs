use rand::seq::SliceRandom;

use super::Dataset;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    /// Row indices into the source dataset, ascending.
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub train: Dataset,
    pub test: Dataset,
}

/// Per-class seeded shuffle, then `round(count · test_fraction)` rows of each
/// class go to the test side (at least one, never all).
pub fn stratified_split(dataset: &Dataset, test_fraction: f64, seed: u64) -> Result<Split> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Config(format!(
            "test_fraction must lie strictly between 0 and 1, got {test_fraction}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut train_indices = Vec::new();
    let mut test_indices = Vec::new();
    for class in [0u8, 1] {
        let mut members: Vec<usize> = (0..dataset.len())
            .filter(|&i| dataset.labels[i] == class)
            .collect();
        let count = members.len();
        if count == 0 {
            return Err(Error::Data(format!(
                "class {class} has no samples; cannot stratify"
            )));
        }
        if count == 1 {
            return Err(Error::Data(format!(
                "class {class} has a single sample; it cannot appear in both train and test"
            )));
        }
        let n_test = ((count as f64 * test_fraction).round() as usize).clamp(1, count - 1);
        members.shuffle(&mut rng);
        test_indices.extend_from_slice(&members[..n_test]);
        train_indices.extend_from_slice(&members[n_test..]);
    }
    train_indices.sort_unstable();
    test_indices.sort_unstable();
    Ok(Split {
        train: dataset.subset(&train_indices),
        test: dataset.subset(&test_indices),
        train_indices,
        test_indices,
    })
}
