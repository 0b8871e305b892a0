//! Second-order Pauli-Z ("ZZ") feature map.
//!
//! Each repetition applies a Hadamard layer, a phase `P(2·φ(x_j))` on every
//! qubit, then for every entangled pair `(j, k)` the sandwich
//! `CX(j→k) · P(2·φ(x_j, x_k)) on k · CX(j→k)`, which realises
//! `exp(-i φ Z_j Z_k)` up to global phase.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevec::{check_qubit_count, Angle, Circuit, FeatureTerm, GateOp, StateVector};

/// Which qubit pairs receive a two-qubit term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// Every pair `j < k`, lexicographic.
    #[default]
    Full,
    /// Nearest neighbours `(j, j+1)`.
    Linear,
}

impl Entanglement {
    pub fn pairs(&self, n_qubits: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::Full => (0..n_qubits)
                .flat_map(|j| (j + 1..n_qubits).map(move |k| (j, k)))
                .collect(),
            Entanglement::Linear => (1..n_qubits).map(|k| (k - 1, k)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureMapSpec {
    pub n_qubits: usize,
    #[serde(default = "one")]
    pub reps: usize,
    #[serde(default)]
    pub entanglement: Entanglement,
}

fn one() -> usize {
    1
}

impl FeatureMapSpec {
    pub fn new(n_qubits: usize, reps: usize, entanglement: Entanglement) -> Self {
        FeatureMapSpec {
            n_qubits,
            reps,
            entanglement,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_qubit_count(self.n_qubits)?;
        if self.reps == 0 {
            return Err(Error::Config(
                "feature map needs at least one repetition".into(),
            ));
        }
        Ok(())
    }
}

/// Classical pre-processing functions `φ_{j}` and `φ_{j,k}` that turn feature
/// values into rotation angles.
#[derive(Clone, Copy)]
pub struct DataMap {
    pub phi_single: fn(f64) -> f64,
    pub phi_pair: fn(f64, f64) -> f64,
}

impl fmt::Debug for DataMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DataMap").finish_non_exhaustive()
    }
}

/// `φ(x_j) = x_j`, `φ(x_j, x_k) = (π − x_j)(π − x_k)`.
pub fn default_data_map() -> DataMap {
    DataMap {
        phi_single: |x| x,
        phi_pair: |a, b| (PI - a) * (PI - b),
    }
}

impl Default for DataMap {
    fn default() -> Self {
        default_data_map()
    }
}

pub fn build_feature_map(spec: &FeatureMapSpec) -> Result<Circuit> {
    build_feature_map_with(spec, default_data_map())
}

pub fn build_feature_map_with(spec: &FeatureMapSpec, data_map: DataMap) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n_qubits;
    let pairs = spec.entanglement.pairs(n);
    let mut circuit = Circuit::with_data_map(n, data_map)?;
    for _ in 0..spec.reps {
        for q in 0..n {
            circuit.push(GateOp::H(q))?;
        }
        for q in 0..n {
            circuit.push(GateOp::P(
                q,
                Angle::Feature {
                    term: FeatureTerm::Single(q),
                    scale: 2.0,
                },
            ))?;
        }
        for &(j, k) in &pairs {
            circuit.push(GateOp::Cx(j, k))?;
            circuit.push(GateOp::P(
                k,
                Angle::Feature {
                    term: FeatureTerm::Pair(j, k),
                    scale: 2.0,
                },
            ))?;
            circuit.push(GateOp::Cx(j, k))?;
        }
    }
    circuit.reserve_features(n);
    Ok(circuit)
}

/// A built feature-map circuit, reusable across many encodings.
#[derive(Debug, Clone)]
pub struct FeatureMap {
    spec: FeatureMapSpec,
    circuit: Circuit,
}

impl FeatureMap {
    pub fn new(spec: FeatureMapSpec) -> Result<Self> {
        Self::with_data_map(spec, default_data_map())
    }

    pub fn with_data_map(spec: FeatureMapSpec, data_map: DataMap) -> Result<Self> {
        Ok(FeatureMap {
            spec,
            circuit: build_feature_map_with(&spec, data_map)?,
        })
    }

    pub fn spec(&self) -> &FeatureMapSpec {
        &self.spec
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// `|φ(x)⟩` for a feature vector normalized to `[0, 1]`.
    pub fn encode(&self, x: &[f64]) -> Result<StateVector> {
        check_features(x, self.spec.n_qubits)?;
        crate::statevec::run_circuit(&self.circuit, x, &[])
    }
}

pub(crate) fn check_features(x: &[f64], n_qubits: usize) -> Result<()> {
    if x.len() != n_qubits {
        return Err(Error::Encoding(format!(
            "{} features supplied for a {n_qubits}-qubit feature map",
            x.len()
        )));
    }
    if let Some((j, v)) = x
        .iter()
        .enumerate()
        .find(|(_, v)| !(0.0..=1.0).contains(*v))
    {
        return Err(Error::Encoding(format!(
            "feature {j} = {v} lies outside [0, 1]; normalize before encoding"
        )));
    }
    Ok(())
}

pub fn encode(x: &[f64], spec: &FeatureMapSpec, data_map: DataMap) -> Result<StateVector> {
    FeatureMap::with_data_map(*spec, data_map)?.encode(x)
}
