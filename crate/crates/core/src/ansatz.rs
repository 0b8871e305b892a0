//! Trainable RY/RZ ansatz with CY/CZ entangling chains.
//!
//! Layout for `reps = r`: `r` blocks of `[RY on every qubit, RZ on every qubit,
//! entanglers]` followed by a closing `[RY, RZ]` rotation layer. Parameters are
//! numbered in order of appearance, so `2·n·(r+1)` in total.

use std::f64::consts::PI;
use std::ops::Deref;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featmap::Entanglement;
use crate::rng;
use crate::statevec::{check_qubit_count, Angle, Circuit, GateOp, StateVector};

/// Which two-qubit gate each entangling link uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entangler {
    /// CY on even-numbered links, CZ on odd-numbered links.
    #[default]
    Alternating,
    Cy,
    Cz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_entanglement")]
    pub entanglement: Entanglement,
    #[serde(default)]
    pub entangler: Entangler,
}

fn default_reps() -> usize {
    2
}

fn default_entanglement() -> Entanglement {
    Entanglement::Linear
}

impl AnsatzSpec {
    pub fn new(n_qubits: usize, reps: usize, entanglement: Entanglement) -> Self {
        AnsatzSpec {
            n_qubits,
            reps,
            entanglement,
            entangler: Entangler::Alternating,
        }
    }

    pub fn param_count(&self) -> usize {
        2 * self.n_qubits * (self.reps + 1)
    }

    pub fn validate(&self) -> Result<()> {
        check_qubit_count(self.n_qubits)?;
        if self.reps == 0 {
            return Err(Error::Config("ansatz needs at least one repetition".into()));
        }
        Ok(())
    }
}

/// Trainable angles in radians.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Binding(format!("parameter {i} is not finite")));
        }
        Ok(ParamVector(values))
    }

    pub fn zeros(len: usize) -> Self {
        ParamVector(vec![0.0; len])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ParamVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub fn build_ansatz(spec: &AnsatzSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n_qubits;
    let links = spec.entanglement.pairs(n);
    let mut circuit = Circuit::new(n)?;
    let mut next = 0usize;
    let mut rotation_layer = |circuit: &mut Circuit| -> Result<()> {
        for q in 0..n {
            circuit.push(GateOp::Ry(q, Angle::param(next)))?;
            next += 1;
        }
        for q in 0..n {
            circuit.push(GateOp::Rz(q, Angle::param(next)))?;
            next += 1;
        }
        Ok(())
    };
    for _ in 0..spec.reps {
        rotation_layer(&mut circuit)?;
        for (link, &(a, b)) in links.iter().enumerate() {
            let op = match (spec.entangler, link % 2) {
                (Entangler::Cy, _) | (Entangler::Alternating, 0) => GateOp::Cy(a, b),
                _ => GateOp::Cz(a, b),
            };
            circuit.push(op)?;
        }
    }
    rotation_layer(&mut circuit)?;
    debug_assert_eq!(circuit.n_param_slots(), spec.param_count());
    Ok(circuit)
}

/// I.i.d. uniform angles on `(−π, π]`.
pub fn init_params(spec: &AnsatzSpec, seed: u64) -> ParamVector {
    let mut rng = rng::seeded(seed);
    ParamVector(
        (0..spec.param_count())
            .map(|_| PI - 2.0 * PI * rng.random::<f64>())
            .collect(),
    )
}

/// A built ansatz circuit.
#[derive(Debug, Clone)]
pub struct Ansatz {
    spec: AnsatzSpec,
    circuit: Circuit,
}

impl Ansatz {
    pub fn new(spec: AnsatzSpec) -> Result<Self> {
        Ok(Ansatz {
            spec,
            circuit: build_ansatz(&spec)?,
        })
    }

    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn apply(&self, state: &mut StateVector, params: &[f64]) -> Result<()> {
        if params.len() != self.spec.param_count() {
            return Err(Error::Binding(format!(
                "ansatz expects {} parameters, got {}",
                self.spec.param_count(),
                params.len()
            )));
        }
        self.circuit.apply_to(state, &[], params)
    }
}

pub fn apply_ansatz(state: &StateVector, spec: &AnsatzSpec, params: &[f64]) -> Result<StateVector> {
    let mut out = state.clone();
    Ansatz::new(*spec)?.apply(&mut out, params)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::{zero_state, GateKind};

    #[test]
    fn two_qubit_layout() {
        let c = build_ansatz(&AnsatzSpec::new(2, 1, Entanglement::Linear)).unwrap();
        let p = Angle::param;
        assert_eq!(
            c.ops(),
            &[
                GateOp::Ry(0, p(0)),
                GateOp::Ry(1, p(1)),
                GateOp::Rz(0, p(2)),
                GateOp::Rz(1, p(3)),
                GateOp::Cy(0, 1),
                GateOp::Ry(0, p(4)),
                GateOp::Ry(1, p(5)),
                GateOp::Rz(0, p(6)),
                GateOp::Rz(1, p(7)),
            ]
        );
        assert_eq!(c.n_param_slots(), 8);
    }

    #[test]
    fn alternating_chain() {
        let c = build_ansatz(&AnsatzSpec::new(5, 2, Entanglement::Linear)).unwrap();
        let ent: Vec<_> = c
            .ops()
            .iter()
            .filter(|op| op.qubits().len() == 2)
            .copied()
            .collect();
        assert_eq!(
            &ent[..4],
            &[
                GateOp::Cy(0, 1),
                GateOp::Cz(1, 2),
                GateOp::Cy(2, 3),
                GateOp::Cz(3, 4)
            ]
        );
        assert_eq!(ent.len(), 8);
        assert_eq!(c.n_param_slots(), 30);
        assert_eq!(
            AnsatzSpec::new(5, 2, Entanglement::Linear).param_count(),
            30
        );
    }

    #[test]
    fn entangler_override() {
        let mut spec = AnsatzSpec::new(3, 1, Entanglement::Full);
        spec.entangler = Entangler::Cz;
        let c = build_ansatz(&spec).unwrap();
        assert_eq!(
            c.ops()
                .iter()
                .filter(|op| op.kind() == GateKind::Cz)
                .count(),
            3
        );
        assert_eq!(
            c.ops()
                .iter()
                .filter(|op| op.kind() == GateKind::Cy)
                .count(),
            0
        );
    }

    #[test]
    fn zero_params_are_identity_on_zero_state() {
        let spec = AnsatzSpec::new(2, 1, Entanglement::Linear);
        let s = zero_state(2).unwrap();
        let out = apply_ansatz(&s, &spec, &[0.0; 8]).unwrap();
        assert!((out.amplitudes()[0].re - 1.0).abs() < 1e-15);
        assert!(out.amplitudes()[1..].iter().all(|a| a.norm() < 1e-15));
    }

    #[test]
    fn ry_pi_flips_first_qubit() {
        let spec = AnsatzSpec::new(2, 1, Entanglement::Linear);
        let mut params = vec![0.0; 8];
        params[0] = PI;
        let out = apply_ansatz(&zero_state(2).unwrap(), &spec, &params).unwrap();
        // |10⟩, then CY with control set maps it to i|11⟩
        assert!((out.amplitudes()[0b11].norm() - 1.0).abs() < 1e-12);
        let mut spec1 = AnsatzSpec::new(1, 1, Entanglement::Linear);
        spec1.reps = 1;
        let mut params = vec![0.0; 4];
        params[0] = PI;
        let out = apply_ansatz(&zero_state(1).unwrap(), &spec1, &params).unwrap();
        assert!((out.amplitudes()[1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn init_params_deterministic_and_in_range() {
        let spec = AnsatzSpec::new(5, 2, Entanglement::Linear);
        let a = init_params(&spec, 9);
        assert_eq!(a.len(), 30);
        assert_eq!(a, init_params(&spec, 9));
        assert_ne!(a, init_params(&spec, 10));
        assert!(a.iter().all(|v| *v > -PI && *v <= PI));
    }

    #[test]
    fn init_params_mean_near_zero() {
        let spec = AnsatzSpec::new(10, 499, Entanglement::Linear);
        let v = init_params(&spec, 1);
        assert_eq!(v.len(), 10_000);
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        assert!(mean.abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn param_length_checked() {
        let spec = AnsatzSpec::new(2, 1, Entanglement::Linear);
        let err = apply_ansatz(&zero_state(2).unwrap(), &spec, &[0.0; 7]).unwrap_err();
        assert!(matches!(err, Error::Binding(_)));
        assert!(ParamVector::new(vec![f64::INFINITY]).is_err());
    }
}
