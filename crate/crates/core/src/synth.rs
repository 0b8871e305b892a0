//! Seeded synthetic datasets for demos and end-to-end checks.

use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::Result;
use crate::prep::Dataset;
use crate::rng;

/// Two isotropic unit-variance Gaussian blobs in `dim` dimensions.
///
/// Class means sit at `±separation/2` on every axis, so the blobs are
/// `separation` standard deviations apart along each feature. Labels
/// alternate 1, 0, 1, 0, … so any prefix is balanced.
pub fn gaussian_blobs(n_samples: usize, dim: usize, separation: f64, seed: u64) -> Result<Dataset> {
    let mut rng = rng::seeded(seed);
    let mut features = Vec::with_capacity(n_samples);
    let mut labels = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let label = (i % 2 == 0) as u8;
        let centre = if label == 1 {
            separation / 2.0
        } else {
            -separation / 2.0
        };
        let row = (0..dim)
            .map(|_| centre + rng.sample::<f64, _>(StandardNormal))
            .collect();
        features.push(row);
        labels.push(label);
    }
    Dataset::new(features, labels)
}

/// Renders a dataset as CSV with an `id` column, the feature columns and a
/// `label` column holding `positive` / `negative`.
pub fn dataset_to_csv(ds: &Dataset, positive: &str, negative: &str) -> String {
    let mut out = String::from("id");
    for name in &ds.feature_names {
        write!(out, ",{name}").unwrap();
    }
    out.push_str(",label\n");
    for ((id, row), &y) in ds.ids.iter().zip(&ds.features).zip(&ds.labels) {
        write!(out, "s{id}").unwrap();
        for v in row {
            write!(out, ",{v}").unwrap();
        }
        writeln!(out, ",{}", if y == 1 { positive } else { negative }).unwrap();
    }
    out
}

/// Per-task kinematic measures, in the column order of the public
/// handwriting-for-Alzheimer's table (18 measures × 25 tasks, `ID`, `class`).
pub const HANDWRITING_MEASURES: [&str; 18] = [
    "air_time",
    "disp_index",
    "gmrt_in_air",
    "gmrt_on_paper",
    "max_x_extension",
    "max_y_extension",
    "mean_acc_in_air",
    "mean_acc_on_paper",
    "mean_gmrt",
    "mean_jerk_in_air",
    "mean_jerk_on_paper",
    "mean_speed_in_air",
    "mean_speed_on_paper",
    "num_of_pendown",
    "paper_time",
    "pressure_mean",
    "pressure_var",
    "total_time",
];

pub const HANDWRITING_TASKS: usize = 25;

/// CSV text shaped like the 174-row handwriting table (89 patients `P`, 85
/// healthy `H`), generated from a one-factor latent model: each subject has a
/// latent impairment score shifted by `effect` for patients, and every
/// measure is a noisy log-linear function of it.
pub fn handwriting_like_csv(n_patients: usize, n_healthy: usize, effect: f64, seed: u64) -> String {
    let mut rng = rng::seeded(seed);
    let n_cols = HANDWRITING_MEASURES.len() * HANDWRITING_TASKS;
    let noise = Normal::new(0.0, 1.0).expect("unit normal");

    let scale: Vec<f64> = (0..n_cols)
        .map(|_| 10f64.powf(rng.random_range(0.0..4.0)))
        .collect();
    let loading: Vec<f64> = (0..n_cols)
        .map(|_| {
            if rng.random_bool(0.4) {
                rng.random_range(-0.6..0.6)
            } else {
                0.0
            }
        })
        .collect();

    let mut out = String::from("ID");
    for task in 1..=HANDWRITING_TASKS {
        for m in HANDWRITING_MEASURES {
            write!(out, ",{m}{task}").unwrap();
        }
    }
    out.push_str(",class\n");

    let n = n_patients + n_healthy;
    for i in 0..n {
        let patient = i < n_patients;
        let latent = noise.sample(&mut rng) + if patient { effect } else { 0.0 };
        write!(out, "id_{}", i + 1).unwrap();
        for j in 0..n_cols {
            let v = scale[j] * (loading[j] * latent + 0.35 * noise.sample(&mut rng)).exp();
            write!(out, ",{v:.6}").unwrap();
        }
        out.push_str(if patient { ",P\n" } else { ",H\n" });
    }
    out
}
