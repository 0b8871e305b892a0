//! Variational quantum classifier: feature map, ansatz, parity readout.
//!
//! The class probability `p_ad` is the probability that the measured qubits
//! show an even number of ones. In exact mode it is read off the statevector;
//! in shot mode it is the even-parity fraction of sampled counts, with the
//! sampling seed derived from `(cfg.seed, sample index, evaluation index)` so
//! a result never depends on the order samples are evaluated in.

use serde::{Deserialize, Serialize};

use crate::ansatz::{init_params, Ansatz, AnsatzSpec, ParamVector};
use crate::error::{Error, Result};
use crate::featmap::{FeatureMap, FeatureMapSpec};
use crate::prep::Dataset;
use crate::rng::mix_seed;
use crate::spsa::{spsa_minimize, SpsaConfig, TrainingRun};
use crate::statevec::{check_measured, sample_counts, BitString, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "NON_AD")]
    NonAd,
    #[serde(rename = "AD")]
    Ad,
}

impl Label {
    /// AD = 1, NON_AD = 0.
    pub fn as_u8(self) -> u8 {
        match self {
            Label::Ad => 1,
            Label::NonAd => 0,
        }
    }

    pub fn from_u8(v: u8) -> Self {
        if v == 1 {
            Label::Ad
        } else {
            Label::NonAd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Ad => "AD",
            Label::NonAd => "NON_AD",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which parity maps to the AD class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityRule {
    #[default]
    EvenIsAd,
    OddIsAd,
}

pub fn parity_decode(bits: &BitString) -> Label {
    decode_with(bits, ParityRule::EvenIsAd)
}

fn decode_with(bits: &BitString, rule: ParityRule) -> Label {
    let even = bits.count_ones() % 2 == 0;
    match (rule, even) {
        (ParityRule::EvenIsAd, true) | (ParityRule::OddIsAd, false) => Label::Ad,
        _ => Label::NonAd,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Readout {
    Exact,
    Shots(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqcConfig {
    pub feature_map: FeatureMapSpec,
    pub ansatz: AnsatzSpec,
    #[serde(default = "default_measured")]
    pub measured_qubits: Vec<usize>,
    #[serde(default = "default_readout")]
    pub readout: Readout,
    pub seed: u64,
    #[serde(default = "default_eps")]
    pub loss_clip_epsilon: f64,
    #[serde(default)]
    pub parity: ParityRule,
}

fn default_measured() -> Vec<usize> {
    vec![0, 1]
}

fn default_readout() -> Readout {
    Readout::Exact
}

fn default_eps() -> f64 {
    1e-9
}

impl VqcConfig {
    pub fn new(feature_map: FeatureMapSpec, ansatz: AnsatzSpec, seed: u64) -> Self {
        let measured = if feature_map.n_qubits >= 2 {
            vec![0, 1]
        } else {
            vec![0]
        };
        VqcConfig {
            feature_map,
            ansatz,
            measured_qubits: measured,
            readout: Readout::Exact,
            seed,
            loss_clip_epsilon: default_eps(),
            parity: ParityRule::EvenIsAd,
        }
    }

    pub fn with_readout(mut self, readout: Readout) -> Self {
        self.readout = readout;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.feature_map.validate()?;
        self.ansatz.validate()?;
        if self.feature_map.n_qubits != self.ansatz.n_qubits {
            return Err(Error::Config(format!(
                "feature map has {} qubits but the ansatz has {}",
                self.feature_map.n_qubits, self.ansatz.n_qubits
            )));
        }
        check_measured(self.feature_map.n_qubits, &self.measured_qubits)?;
        if let Readout::Shots(0) = self.readout {
            return Err(Error::Config("shot count must be at least 1".into()));
        }
        if !(self.loss_clip_epsilon > 0.0 && self.loss_clip_epsilon < 0.5) {
            return Err(Error::Config(format!(
                "loss_clip_epsilon must lie in (0, 0.5), got {}",
                self.loss_clip_epsilon
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub p_ad: f64,
    pub label: Label,
}

impl Prediction {
    pub fn from_probability(p_ad: f64) -> Self {
        Prediction {
            p_ad,
            label: if p_ad >= 0.5 { Label::Ad } else { Label::NonAd },
        }
    }
}

/// Shot-sampling seed for one circuit execution.
pub fn shot_seed(base: u64, sample_index: u64, evaluation: u64) -> u64 {
    mix_seed(&[base, sample_index, evaluation])
}

/// `−(1/N) Σ [y ln p̂ + (1−y) ln(1−p̂)]` with `p̂` clipped to `[ε, 1−ε]`.
pub fn binary_cross_entropy(labels: &[u8], p_ad: &[f64], eps: f64) -> Result<f64> {
    if labels.is_empty() {
        return Err(Error::Config("loss over an empty dataset".into()));
    }
    if labels.len() != p_ad.len() {
        return Err(Error::Binding(format!(
            "{} labels but {} predictions",
            labels.len(),
            p_ad.len()
        )));
    }
    let total: f64 = labels
        .iter()
        .zip(p_ad)
        .map(|(&y, &p)| {
            let p = p.clamp(eps, 1.0 - eps);
            if y == 1 {
                -p.ln()
            } else {
                -(1.0 - p).ln()
            }
        })
        .sum();
    Ok(total / labels.len() as f64)
}

/// A configured classifier with its circuits built once.
#[derive(Debug, Clone)]
pub struct Vqc {
    cfg: VqcConfig,
    feature_map: FeatureMap,
    ansatz: Ansatz,
    parity_mask: usize,
}

impl Vqc {
    pub fn new(cfg: VqcConfig) -> Result<Self> {
        cfg.validate()?;
        let feature_map = FeatureMap::new(cfg.feature_map)?;
        let ansatz = Ansatz::new(cfg.ansatz)?;
        let n = cfg.feature_map.n_qubits;
        let parity_mask = cfg
            .measured_qubits
            .iter()
            .fold(0usize, |m, &q| m | (1 << (n - 1 - q)));
        Ok(Vqc {
            cfg,
            feature_map,
            ansatz,
            parity_mask,
        })
    }

    pub fn config(&self) -> &VqcConfig {
        &self.cfg
    }

    pub fn n_params(&self) -> usize {
        self.cfg.ansatz.param_count()
    }

    pub fn feature_map(&self) -> &FeatureMap {
        &self.feature_map
    }

    pub fn encode(&self, x: &[f64]) -> Result<StateVector> {
        self.feature_map.encode(x)
    }

    /// Final state `U(θ)|φ(x)⟩` from an already encoded `|φ(x)⟩`.
    pub fn evolve(&self, encoded: &StateVector, params: &[f64]) -> Result<StateVector> {
        let mut state = encoded.clone();
        self.ansatz.apply(&mut state, params)?;
        Ok(state)
    }

    /// Exact probability of the AD class for a final state.
    pub fn exact_p_ad(&self, state: &StateVector) -> f64 {
        let even: f64 = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| (i & self.parity_mask).count_ones() % 2 == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        match self.cfg.parity {
            ParityRule::EvenIsAd => even,
            ParityRule::OddIsAd => 1.0 - even,
        }
    }

    fn readout_p_ad(&self, state: &StateVector, sample_index: u64, evaluation: u64) -> Result<f64> {
        match self.cfg.readout {
            Readout::Exact => Ok(self.exact_p_ad(state)),
            Readout::Shots(shots) => {
                let seed = shot_seed(self.cfg.seed, sample_index, evaluation);
                let counts = sample_counts(state, shots, seed, &self.cfg.measured_qubits)?;
                let ad: usize = counts
                    .iter()
                    .filter(|(bits, _)| decode_with(bits, self.cfg.parity) == Label::Ad)
                    .map(|(_, n)| n)
                    .sum();
                Ok(ad as f64 / shots as f64)
            }
        }
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params() {
            return Err(Error::Binding(format!(
                "classifier expects {} parameters, got {}",
                self.n_params(),
                params.len()
            )));
        }
        Ok(())
    }

    pub fn forward(&self, x: &[f64], params: &[f64]) -> Result<Prediction> {
        self.forward_indexed(x, params, 0, 0)
    }

    pub fn forward_indexed(
        &self,
        x: &[f64],
        params: &[f64],
        sample_index: u64,
        evaluation: u64,
    ) -> Result<Prediction> {
        self.check_params(params)?;
        let state = self.evolve(&self.encode(x)?, params)?;
        Ok(Prediction::from_probability(self.readout_p_ad(
            &state,
            sample_index,
            evaluation,
        )?))
    }

    fn p_ad_cached(
        &self,
        encoded: &[StateVector],
        params: &[f64],
        evaluation: u64,
    ) -> Result<Vec<f64>> {
        encoded
            .iter()
            .enumerate()
            .map(|(i, s)| self.readout_p_ad(&self.evolve(s, params)?, i as u64, evaluation))
            .collect()
    }

    pub fn encode_all(&self, samples: &[Vec<f64>]) -> Result<Vec<StateVector>> {
        samples.iter().map(|x| self.encode(x)).collect()
    }

    pub fn loss(&self, dataset: &Dataset, params: &[f64]) -> Result<f64> {
        self.loss_at(dataset, params, 0)
    }

    /// Loss with shot seeds drawn for objective evaluation number `evaluation`.
    pub fn loss_at(&self, dataset: &Dataset, params: &[f64], evaluation: u64) -> Result<f64> {
        if dataset.is_empty() {
            return Err(Error::Config("loss over an empty dataset".into()));
        }
        self.check_params(params)?;
        let encoded = self.encode_all(&dataset.features)?;
        let p = self.p_ad_cached(&encoded, params, evaluation)?;
        binary_cross_entropy(&dataset.labels, &p, self.cfg.loss_clip_epsilon)
    }

    /// Trains from `init_params(ansatz, init_seed)` with SPSA.
    pub fn train(
        &self,
        train_set: &Dataset,
        spsa: &SpsaConfig,
        init_seed: u64,
    ) -> Result<TrainingRun> {
        let theta0 = init_params(&self.cfg.ansatz, init_seed);
        self.train_from(train_set, spsa, theta0, Some(init_seed))
    }

    pub fn train_from(
        &self,
        train_set: &Dataset,
        spsa: &SpsaConfig,
        theta0: ParamVector,
        init_seed: Option<u64>,
    ) -> Result<TrainingRun> {
        if train_set.is_empty() {
            return Err(Error::Config("training set is empty".into()));
        }
        self.check_params(&theta0)?;
        let encoded = self.encode_all(&train_set.features)?;
        let eps = self.cfg.loss_clip_epsilon;
        let mut evaluation = 0u64;
        let mut failure = None;
        let objective = |theta: &[f64]| {
            evaluation += 1;
            match self
                .p_ad_cached(&encoded, theta, evaluation)
                .and_then(|p| binary_cross_entropy(&train_set.labels, &p, eps))
            {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            }
        };
        let result = spsa_minimize(objective, &theta0, spsa);
        if let Some(e) = failure {
            return Err(e);
        }
        let mut run = result?;
        run.seeds_used.init = init_seed;
        if let Readout::Shots(_) = self.cfg.readout {
            run.seeds_used.shots = Some(self.cfg.seed);
        }
        Ok(run)
    }

    pub fn predict_batch(&self, samples: &[Vec<f64>], params: &[f64]) -> Result<Vec<Prediction>> {
        self.check_params(params)?;
        samples
            .iter()
            .enumerate()
            .map(|(i, x)| self.forward_indexed(x, params, i as u64, 0))
            .collect()
    }
}

pub fn forward(x: &[f64], params: &[f64], cfg: &VqcConfig) -> Result<Prediction> {
    Vqc::new(cfg.clone())?.forward(x, params)
}

pub fn loss(dataset: &Dataset, params: &[f64], cfg: &VqcConfig) -> Result<f64> {
    Vqc::new(cfg.clone())?.loss(dataset, params)
}

pub fn train(
    train_set: &Dataset,
    cfg: &VqcConfig,
    spsa: &SpsaConfig,
    init_seed: u64,
) -> Result<TrainingRun> {
    Vqc::new(cfg.clone())?.train(train_set, spsa, init_seed)
}

pub fn predict_batch(
    samples: &[Vec<f64>],
    params: &[f64],
    cfg: &VqcConfig,
) -> Result<Vec<Prediction>> {
    Vqc::new(cfg.clone())?.predict_batch(samples, params)
}
