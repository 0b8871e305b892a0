//! Simultaneous perturbation stochastic approximation.
//!
//! Each iteration draws a Rademacher direction `Δ`, evaluates the objective at
//! `θ ± c_k Δ`, steps `θ ← θ − a_k ĝ` and then evaluates the objective once more
//! at the updated point for the loss history: three evaluations per iteration.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpsaConfig {
    #[serde(default = "defaults::maxiter")]
    pub maxiter: usize,
    #[serde(default = "defaults::a")]
    pub a: f64,
    #[serde(default = "defaults::c")]
    pub c: f64,
    #[serde(default = "defaults::alpha")]
    pub alpha: f64,
    #[serde(default = "defaults::gamma")]
    pub gamma: f64,
    /// Stability constant; `None` means `0.1 · maxiter`.
    #[serde(rename = "A", default)]
    pub stability: Option<f64>,
    pub seed: u64,
}

mod defaults {
    pub fn maxiter() -> usize {
        500
    }
    pub fn a() -> f64 {
        0.15
    }
    pub fn c() -> f64 {
        0.2
    }
    pub fn alpha() -> f64 {
        0.602
    }
    pub fn gamma() -> f64 {
        0.101
    }
}

impl SpsaConfig {
    pub fn new(seed: u64) -> Self {
        SpsaConfig {
            maxiter: defaults::maxiter(),
            a: defaults::a(),
            c: defaults::c(),
            alpha: defaults::alpha(),
            gamma: defaults::gamma(),
            stability: None,
            seed,
        }
    }

    pub fn with_maxiter(mut self, maxiter: usize) -> Self {
        self.maxiter = maxiter;
        self
    }

    pub fn stability(&self) -> f64 {
        self.stability.unwrap_or(0.1 * self.maxiter as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.c > 0.0) {
            return Err(Error::Config(format!(
                "SPSA gains must be positive (a = {}, c = {})",
                self.a, self.c
            )));
        }
        if !(0.0 < self.gamma && self.gamma < self.alpha && self.alpha <= 1.0) {
            return Err(Error::Config(format!(
                "SPSA exponents must satisfy 0 < gamma < alpha <= 1 (gamma = {}, alpha = {})",
                self.gamma, self.alpha
            )));
        }
        if !(self.stability() >= 0.0) {
            return Err(Error::Config(format!(
                "SPSA stability constant A must be non-negative, got {}",
                self.stability()
            )));
        }
        Ok(())
    }
}

/// `(a_k, c_k) = (a / (k + 1 + A)^α, c / (k + 1)^γ)`.
pub fn gain_sequences(cfg: &SpsaConfig, k: usize) -> (f64, f64) {
    let k1 = k as f64 + 1.0;
    (
        cfg.a / (k1 + cfg.stability()).powf(cfg.alpha),
        cfg.c / k1.powf(cfg.gamma),
    )
}

/// Seeds that determined a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SeedsUsed {
    pub spsa: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingRun {
    pub final_params: Vec<f64>,
    /// Objective after each update; one entry per executed iteration.
    pub loss_history: Vec<f64>,
    pub seeds_used: SeedsUsed,
    pub evaluations: usize,
}

/// Draws `dim` independent ±1 entries.
pub fn rademacher(rng: &mut SeededRng, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect()
}

/// Two-sided simultaneous-perturbation gradient estimate along `delta`.
/// Returns the estimate together with the two objective values.
pub fn estimate_gradient<F>(
    objective: &mut F,
    theta: &[f64],
    ck: f64,
    delta: &[f64],
) -> (Vec<f64>, f64, f64)
where
    F: FnMut(&[f64]) -> f64,
{
    let plus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t + ck * d).collect();
    let minus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t - ck * d).collect();
    let y_plus = objective(&plus);
    let y_minus = objective(&minus);
    let diff = y_plus - y_minus;
    let g = delta.iter().map(|d| diff / (2.0 * ck * d)).collect();
    (g, y_plus, y_minus)
}

/// Minimizes `objective` starting from `theta0`.
pub fn spsa_minimize<F>(mut objective: F, theta0: &[f64], cfg: &SpsaConfig) -> Result<TrainingRun>
where
    F: FnMut(&[f64]) -> f64,
{
    cfg.validate()?;
    let mut theta = theta0.to_vec();
    let mut history = Vec::with_capacity(cfg.maxiter);
    let mut rng = rng::seeded(cfg.seed);
    let mut evaluations = 0;

    let finite = |iteration: usize, value: f64| {
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteObjective { iteration, value })
        }
    };

    for k in 0..cfg.maxiter {
        let (ak, ck) = gain_sequences(cfg, k);
        let delta = rademacher(&mut rng, theta.len());
        let (g, y_plus, y_minus) = estimate_gradient(&mut objective, &theta, ck, &delta);
        evaluations += 2;
        finite(k, y_plus)?;
        finite(k, y_minus)?;
        for (t, gi) in theta.iter_mut().zip(&g) {
            *t -= ak * gi;
        }
        let loss = objective(&theta);
        evaluations += 1;
        history.push(finite(k, loss)?);
    }

    Ok(TrainingRun {
        final_params: theta,
        loss_history: history,
        seeds_used: SeedsUsed {
            spsa: cfg.seed,
            ..SeedsUsed::default()
        },
        evaluations,
    })
}
