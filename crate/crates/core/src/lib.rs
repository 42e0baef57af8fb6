//! Stabilizer-circuit simulation and quantum-error-correction evaluation.
//!
//! The crate centers on [`sparse_sim::SparseStabState`], a stabilizer +
//! destabilizer simulator whose generators are stored as row-wise and
//! column-wise sparse index sets, so gate and measurement cost tracks the
//! size of the sets actually touched instead of the qubit count. A dense
//! word-packed tableau ([`dense_sim::DenseTableau`]) provides the exact
//! oracle and the O(n)-per-gate baseline.
//!
//! Around the simulators sit the pieces needed to evaluate QEC protocols:
//! tick-based circuits, surface-code and repetition-code generators, stochastic
//! error models, a minimum-weight-perfect-matching decoder, circuit runners,
//! a stabilizer-code verifier, and a closed-form evaluator for depth-one
//! QAOA Max-Cut expectations.

pub mod circuits;
pub mod crossval;
pub mod decoders;
pub mod dense_sim;
pub mod error_gens;
pub mod gates;
pub mod pauli;
pub mod qaoa;
pub mod qeccs;
pub mod runners;
pub mod sim;
pub mod sparse_sim;
pub mod verify;

pub use circuits::{LogicalCircuit, LogicalGate, LogicalInstruction, QuantumCircuit};
pub use dense_sim::DenseTableau;
pub use sim::{MeasOutcome, SimError, StabilizerSimulator};
pub use sparse_sim::SparseStabState;
