//! Variational quantum classifier for binary classification of tabular data.
//!
//! The pipeline mirrors the classical/quantum split of a hybrid classifier:
//!
//! * [`prep`] ingests a CSV table, one-hot encodes categorical columns, fits PCA
//!   down to the qubit count and min-max scales every component into `[0, 1]`.
//! * [`featmap`] encodes each sample with a ZZ feature map on the
//!   [`statevec`] simulator.
//! * [`ansatz`] appends a trainable RY/RZ circuit with CY/CZ entanglers.
//! * [`vqc`] reads the parity of the measured qubits as the class and trains
//!   the circuit parameters with [`spsa`].
//! * [`metrics`] and [`qkernel`] produce the evaluation artifacts; [`cli`] wires
//!   everything into the `vqc` command-line tool.

pub mod ansatz;
pub mod cli;
pub mod error;
pub mod featmap;
pub mod metrics;
pub mod prep;
pub mod qkernel;
pub mod rng;
pub mod spsa;
pub mod statevec;
pub mod synth;
pub mod vqc;

pub use error::{Error, Result};
