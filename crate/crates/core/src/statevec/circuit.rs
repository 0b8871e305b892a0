use super::gate::{Angle, FeatureTerm, GateOp};
use super::{check_qubit_count, zero_state, StateVector};
use crate::error::{Error, Result};
use crate::featmap::DataMap;

/// Ordered gate list over a fixed register, with symbolic feature and
/// parameter slots.
///
/// Slot counts are derived from the highest slot index referenced by any op.
/// Feature angles are resolved through the circuit's `DataMap`.
#[derive(Debug, Clone)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    data_map: DataMap,
    n_features: usize,
    n_params: usize,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        Self::with_data_map(n_qubits, DataMap::default())
    }

    pub fn with_data_map(n_qubits: usize, data_map: DataMap) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        Ok(Circuit {
            n_qubits,
            ops: Vec::new(),
            data_map,
            n_features: 0,
            n_params: 0,
        })
    }

    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        match op.angle() {
            Some(Angle::Param { index, .. }) => self.n_params = self.n_params.max(index + 1),
            Some(Angle::Feature { term, .. }) => {
                self.n_features = self.n_features.max(term.max_index() + 1)
            }
            _ => {}
        }
        self.ops.push(op);
        Ok(())
    }

    /// Declares at least `n` feature slots even if fewer are referenced.
    pub fn reserve_features(&mut self, n: usize) {
        self.n_features = self.n_features.max(n);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn n_feature_slots(&self) -> usize {
        self.n_features
    }

    pub fn n_param_slots(&self) -> usize {
        self.n_params
    }

    pub fn data_map(&self) -> &DataMap {
        &self.data_map
    }

    /// Appends the ops of `other`, keeping this circuit's data map.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Config(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        for op in &other.ops {
            self.push(*op)?;
        }
        self.n_features = self.n_features.max(other.n_features);
        Ok(())
    }

    /// Adjoint circuit: ops reversed, every angle negated.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            ops: self.ops.iter().rev().map(|op| op.inverse()).collect(),
            ..self.clone()
        }
    }

    fn resolve(&self, angle: Angle, features: &[f64], params: &[f64]) -> f64 {
        match angle {
            Angle::Value(v) => v,
            Angle::Param { index, scale } => scale * params[index],
            Angle::Feature { term, scale } => {
                let phi = match term {
                    FeatureTerm::Single(j) => (self.data_map.phi_single)(features[j]),
                    FeatureTerm::Pair(j, k) => (self.data_map.phi_pair)(features[j], features[k]),
                };
                scale * phi
            }
        }
    }

    fn check_lengths(&self, features: &[f64], params: &[f64]) -> Result<()> {
        if features.len() != self.n_features {
            return Err(Error::Binding(format!(
                "circuit has {} feature slots but {} values were supplied",
                self.n_features,
                features.len()
            )));
        }
        if params.len() != self.n_params {
            return Err(Error::Binding(format!(
                "circuit has {} parameter slots but {} values were supplied",
                self.n_params,
                params.len()
            )));
        }
        Ok(())
    }

    /// Ops with every slot replaced by its value.
    pub fn bind(&self, features: &[f64], params: &[f64]) -> Result<Vec<GateOp>> {
        self.check_lengths(features, params)?;
        Ok(self
            .ops
            .iter()
            .map(|op| match op.angle() {
                Some(a) => op.with_angle(Angle::Value(self.resolve(a, features, params))),
                None => *op,
            })
            .collect())
    }

    /// Advances `state` through the circuit in place.
    pub fn apply_to(
        &self,
        state: &mut StateVector,
        features: &[f64],
        params: &[f64],
    ) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Binding(format!(
                "{}-qubit circuit applied to a {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        self.check_lengths(features, params)?;
        for op in &self.ops {
            let bound = match op.angle() {
                Some(a) => op.with_angle(Angle::Value(self.resolve(a, features, params))),
                None => *op,
            };
            state.apply(&bound)?;
        }
        Ok(())
    }
}

/// Runs `circuit` from `|0…0⟩` with the given slot values.
pub fn run_circuit(circuit: &Circuit, features: &[f64], params: &[f64]) -> Result<StateVector> {
    let mut state = zero_state(circuit.n_qubits())?;
    circuit.apply_to(&mut state, features, params)?;
    Ok(state)
}
