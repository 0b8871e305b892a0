use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::StateVector;
use crate::error::{Error, Result};

/// Rotation angle of a gate, either a concrete value in radians or a
/// reference to a slot that is resolved when the circuit is bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Value(f64),
    /// `scale · params[index]`
    Param {
        index: usize,
        scale: f64,
    },
    /// `scale · φ(term)` where `φ` is the circuit's data map.
    Feature {
        term: FeatureTerm,
        scale: f64,
    },
}

impl Angle {
    pub fn param(index: usize) -> Self {
        Angle::Param { index, scale: 1.0 }
    }

    pub fn is_bound(&self) -> bool {
        matches!(self, Angle::Value(_))
    }

    pub(crate) fn negated(self) -> Self {
        match self {
            Angle::Value(v) => Angle::Value(-v),
            Angle::Param { index, scale } => Angle::Param {
                index,
                scale: -scale,
            },
            Angle::Feature { term, scale } => Angle::Feature {
                term,
                scale: -scale,
            },
        }
    }
}

/// Feature slot referenced by a feature-map angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureTerm {
    Single(usize),
    Pair(usize, usize),
}

impl FeatureTerm {
    pub(crate) fn max_index(&self) -> usize {
        match *self {
            FeatureTerm::Single(j) => j,
            FeatureTerm::Pair(j, k) => j.max(k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Ry,
    Rz,
    P,
    Cx,
    Cy,
    Cz,
}

/// One gate application. Two-qubit variants are `(control, target)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    H(usize),
    Ry(usize, Angle),
    Rz(usize, Angle),
    /// Phase gate `diag(1, e^{iλ})`.
    P(usize, Angle),
    Cx(usize, usize),
    Cy(usize, usize),
    Cz(usize, usize),
}

impl GateOp {
    pub fn kind(&self) -> GateKind {
        match self {
            GateOp::H(_) => GateKind::H,
            GateOp::Ry(..) => GateKind::Ry,
            GateOp::Rz(..) => GateKind::Rz,
            GateOp::P(..) => GateKind::P,
            GateOp::Cx(..) => GateKind::Cx,
            GateOp::Cy(..) => GateKind::Cy,
            GateOp::Cz(..) => GateKind::Cz,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            GateOp::H(q) | GateOp::Ry(q, _) | GateOp::Rz(q, _) | GateOp::P(q, _) => vec![q],
            GateOp::Cx(c, t) | GateOp::Cy(c, t) | GateOp::Cz(c, t) => vec![c, t],
        }
    }

    pub fn angle(&self) -> Option<Angle> {
        match *self {
            GateOp::Ry(_, a) | GateOp::Rz(_, a) | GateOp::P(_, a) => Some(a),
            _ => None,
        }
    }

    pub(crate) fn with_angle(self, angle: Angle) -> Self {
        match self {
            GateOp::Ry(q, _) => GateOp::Ry(q, angle),
            GateOp::Rz(q, _) => GateOp::Rz(q, angle),
            GateOp::P(q, _) => GateOp::P(q, angle),
            other => other,
        }
    }

    /// Inverse gate. H, CX, CY and CZ are self-inverse.
    pub fn inverse(self) -> Self {
        match self.angle() {
            Some(a) => self.with_angle(a.negated()),
            None => self,
        }
    }

    pub(crate) fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::Config(format!(
                "{:?} addresses qubit {q} on a {n_qubits}-qubit register",
                self.kind()
            )));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::Config(format!(
                "{:?} control and target are both qubit {}",
                self.kind(),
                qs[0]
            )));
        }
        Ok(())
    }
}

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn ry_matrix(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

const PAULI_Y: Mat2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
const PAULI_X: Mat2 = [[ZERO, ONE], [ONE, ZERO]];

/// Applies a bound gate to `state` in place. Errors if the gate still refers to
/// a symbolic slot or addresses qubits outside the register.
pub fn apply_gate(state: &mut StateVector, op: &GateOp) -> Result<()> {
    op.validate(state.n_qubits())?;
    let bound = |a: Angle| match a {
        Angle::Value(v) => Ok(v),
        other => Err(Error::Binding(format!(
            "{:?} has unbound angle slot {other:?}",
            op.kind()
        ))),
    };
    match *op {
        GateOp::H(q) => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            apply_single(state, q, &[[h, h], [h, -h]]);
        }
        GateOp::Ry(q, a) => apply_single(state, q, &ry_matrix(bound(a)?)),
        GateOp::Rz(q, a) => {
            let half = bound(a)? / 2.0;
            apply_diagonal(
                state,
                q,
                Complex64::from_polar(1.0, -half),
                Complex64::from_polar(1.0, half),
            );
        }
        GateOp::P(q, a) => apply_diagonal(state, q, ONE, Complex64::from_polar(1.0, bound(a)?)),
        GateOp::Cx(c, t) => apply_controlled(state, c, t, &PAULI_X),
        GateOp::Cy(c, t) => apply_controlled(state, c, t, &PAULI_Y),
        GateOp::Cz(c, t) => {
            let mask = state.mask(c) | state.mask(t);
            for (i, amp) in state.amplitudes_mut().iter_mut().enumerate() {
                if i & mask == mask {
                    *amp = -*amp;
                }
            }
        }
    }
    Ok(())
}

fn apply_single(state: &mut StateVector, qubit: usize, m: &Mat2) {
    let stride = state.mask(qubit);
    let amps = state.amplitudes_mut();
    for block in (0..amps.len()).step_by(stride << 1) {
        for i in block..block + stride {
            let j = i + stride;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a + m[0][1] * b;
            amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn apply_diagonal(state: &mut StateVector, qubit: usize, d0: Complex64, d1: Complex64) {
    let stride = state.mask(qubit);
    let amps = state.amplitudes_mut();
    for block in (0..amps.len()).step_by(stride << 1) {
        for i in block..block + stride {
            amps[i] *= d0;
            amps[i + stride] *= d1;
        }
    }
}

fn apply_controlled(state: &mut StateVector, control: usize, target: usize, m: &Mat2) {
    let cmask = state.mask(control);
    let stride = state.mask(target);
    let amps = state.amplitudes_mut();
    for block in (0..amps.len()).step_by(stride << 1) {
        for i in block..block + stride {
            if i & cmask == 0 {
                continue;
            }
            let j = i + stride;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a + m[0][1] * b;
            amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}
