//! Dense statevector simulator.
//!
//! Amplitude index `i` read as an `n`-bit binary number (most significant bit
//! first) lists the qubits in ascending order, so qubit 0 is the most significant
//! bit. `BitString` uses the same order: its leftmost character is qubit 0.

mod circuit;
mod gate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

pub use circuit::{run_circuit, Circuit};
pub use gate::{apply_gate, Angle, FeatureTerm, GateKind, GateOp};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// `|0…0⟩` on `n_qubits` qubits.
pub fn zero_state(n_qubits: usize) -> Result<StateVector> {
    check_qubit_count(n_qubits)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
    amplitudes[0] = Complex64::new(1.0, 0.0);
    Ok(StateVector {
        n_qubits,
        amplitudes,
    })
}

pub(crate) fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Config(format!(
            "qubit count {n_qubits} outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

impl StateVector {
    /// Wraps caller-supplied amplitudes. The vector must have length `2^n_qubits`
    /// and unit norm within 1e-9.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::Config(format!(
                "{} amplitudes supplied for {n_qubits} qubits (expected {})",
                amplitudes.len(),
                1usize << n_qubits
            )));
        }
        let state = StateVector {
            n_qubits,
            amplitudes,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() >= 1e-9 {
            return Err(Error::Config(format!(
                "amplitudes are not normalized (squared norm {norm})"
            )));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Encoding(format!(
                "inner product of {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies a fully bound gate in place.
    pub fn apply(&mut self, op: &GateOp) -> Result<()> {
        apply_gate(self, op)
    }

    /// Bit mask selecting `qubit` within an amplitude index.
    #[inline]
    pub(crate) fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Value (0 or 1) of `qubit` in basis state `index`.
    #[inline]
    pub fn qubit_bit(&self, index: usize, qubit: usize) -> u8 {
        ((index & self.mask(qubit)) != 0) as u8
    }
}

/// Outcome probabilities `|a_i|²` over all basis states.
pub fn probabilities(state: &StateVector) -> Vec<f64> {
    state.amplitudes.iter().map(|a| a.norm_sqr()).collect()
}

/// Marginal distribution over `measured` qubits. Entry `m` holds the mass of
/// outcomes whose measured bits, read in `measured` order with the first
/// qubit most significant, spell `m`.
pub fn marginal_probabilities(state: &StateVector, measured: &[usize]) -> Result<Vec<f64>> {
    check_measured(state.n_qubits, measured)?;
    let mut out = vec![0.0; 1 << measured.len()];
    for (index, amp) in state.amplitudes.iter().enumerate() {
        let key = measured.iter().fold(0usize, |acc, &q| {
            (acc << 1) | state.qubit_bit(index, q) as usize
        });
        out[key] += amp.norm_sqr();
    }
    Ok(out)
}

pub(crate) fn check_measured(n_qubits: usize, measured: &[usize]) -> Result<()> {
    if measured.is_empty() {
        return Err(Error::Config("no qubits selected for measurement".into()));
    }
    for (i, &q) in measured.iter().enumerate() {
        if q >= n_qubits {
            return Err(Error::Config(format!(
                "measured qubit {q} out of range for {n_qubits} qubits"
            )));
        }
        if measured[..i].contains(&q) {
            return Err(Error::Config(format!("measured qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Measurement record; leftmost bit belongs to the first measured qubit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Config(format!("non-binary digit in {bits:?}")));
        }
        Ok(BitString(bits))
    }

    fn from_index(value: usize, width: usize) -> Self {
        BitString(
            (0..width)
                .map(|k| ((value >> (width - 1 - k)) & 1) as u8)
                .collect(),
        )
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Config(format!("invalid bit '{other}' in \"{s}\""))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitString)
    }
}

/// Samples `shots` i.i.d. measurements of `measured` qubits.
///
/// Each shot draws one uniform variate from a ChaCha20 stream seeded with
/// `seed` and inverts the cumulative marginal distribution.
pub fn sample_counts(
    state: &StateVector,
    shots: usize,
    seed: u64,
    measured: &[usize],
) -> Result<BTreeMap<BitString, usize>> {
    if shots == 0 {
        return Err(Error::Config("shot count must be at least 1".into()));
    }
    let marginal = marginal_probabilities(state, measured)?;
    let mut cumulative = Vec::with_capacity(marginal.len());
    let mut acc = 0.0;
    for p in &marginal {
        acc += p;
        cumulative.push(acc);
    }
    let total = acc;
    let last_nonzero = marginal.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut hist = vec![0usize; marginal.len()];
    let mut rng = rng::seeded(seed);
    for _ in 0..shots {
        let u = rng.random::<f64>() * total;
        let k = cumulative.partition_point(|&c| c <= u).min(last_nonzero);
        hist[k] += 1;
    }

    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|&(_, n)| n > 0)
        .map(|(k, n)| (BitString::from_index(k, measured.len()), n))
        .collect())
}
