//! Cross-validation of the sparse simulator against the dense tableau: both
//! are driven with one random stream of gates and measurements; the dense
//! simulator draws every random outcome and the sparse one is forced to
//! match, so any disagreement on a deterministic outcome (or on whether an
//! outcome was deterministic at all) is a bug in one of them.

use crate::dense_sim::DenseTableau;
use crate::gates::ONE_QUBIT_GATES;
use crate::pauli::Pauli;
use crate::sim::{SimError, StabilizerSimulator, TwoQubitKind};
use crate::sparse_sim::SparseStabState;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub op_index: usize,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct CrossvalReport {
    pub qubits: usize,
    pub ops: usize,
    pub seed: u64,
    pub measurements: usize,
    pub deterministic: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossvalReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

enum StreamOp {
    One(&'static str, usize),
    Two(TwoQubitKind, usize, usize),
    Measure(Pauli, usize),
    Init(&'static str, usize),
}

fn draw_op(rng: &mut ChaCha12Rng, n: usize) -> StreamOp {
    let q = rng.random_range(0..n);
    match rng.random_range(0..100u32) {
        0..=59 => {
            let (sym, _) = ONE_QUBIT_GATES[rng.random_range(0..24)];
            StreamOp::One(sym, q)
        }
        60..=79 => {
            let mut t = rng.random_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            let kind = match rng.random_range(0..3u32) {
                0 => TwoQubitKind::Cnot,
                1 => TwoQubitKind::Cz,
                _ => TwoQubitKind::Swap,
            };
            StreamOp::Two(kind, q, t)
        }
        80..=94 => {
            let basis = [Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..3)];
            StreamOp::Measure(basis, q)
        }
        _ => {
            let sym = [
                "init |0>",
                "init |1>",
                "init |+>",
                "init |->",
                "init |+i>",
                "init |-i>",
            ][rng.random_range(0..6)];
            StreamOp::Init(sym, q)
        }
    }
}

/// Drive both simulators through `ops` random operations on `qubits` qubits.
pub fn run(qubits: usize, ops: usize, seed: u64) -> Result<CrossvalReport, SimError> {
    let mut sparse = SparseStabState::with_seed(qubits, seed ^ 1);
    run_against(&mut sparse, qubits, ops, seed)
}

/// Same stream driver, but lets tests hand in a (possibly corrupted) sparse
/// state.
pub(crate) fn run_against(
    sparse: &mut SparseStabState,
    qubits: usize,
    ops: usize,
    seed: u64,
) -> Result<CrossvalReport, SimError> {
    assert!(qubits >= 2, "stream uses two-qubit gates");
    let mut dense = DenseTableau::with_seed(qubits, seed.wrapping_mul(0x9E37).wrapping_add(1));
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut report = CrossvalReport {
        qubits,
        ops,
        seed,
        measurements: 0,
        deterministic: 0,
        mismatches: Vec::new(),
    };
    for op_index in 0..ops {
        match draw_op(&mut rng, qubits) {
            StreamOp::One(sym, q) => {
                let action = crate::gates::one_qubit_action(sym)?;
                dense.apply_one_qubit(&action, q)?;
                sparse.apply_one_qubit(&action, q)?;
            }
            StreamOp::Two(kind, a, b) => {
                dense.apply_two_qubit(kind, a, b)?;
                sparse.apply_two_qubit(kind, a, b)?;
            }
            StreamOp::Measure(basis, q) => {
                report.measurements += 1;
                let reference = dense.measure_in(basis, q, None)?;
                let forced = if reference.deterministic { None } else { Some(reference.value) };
                let checked = sparse.measure_in(basis, q, forced)?;
                if checked.deterministic != reference.deterministic {
                    report.mismatches.push(Mismatch {
                        op_index,
                        description: format!(
                            "measure {basis} on qubit {q}: determinism disagrees (dense {}, sparse {})",
                            reference.deterministic, checked.deterministic
                        ),
                    });
                } else if reference.deterministic {
                    report.deterministic += 1;
                    if checked.value != reference.value {
                        report.mismatches.push(Mismatch {
                            op_index,
                            description: format!(
                                "measure {basis} on qubit {q}: dense {} but sparse {}",
                                reference.value, checked.value
                            ),
                        });
                    }
                }
            }
            StreamOp::Init(sym, q) => {
                // Initializations measure internally; replay the dense draw on
                // the sparse side, then apply each side's own flip correction.
                let spec = crate::gates::lookup(sym)?;
                let crate::gates::CliffordSpec::Init { basis, plus } = spec else {
                    unreachable!("init symbols map to Init specs")
                };
                report.measurements += 1;
                let reference = dense.measure_in(basis, q, None)?;
                let forced = if reference.deterministic { None } else { Some(reference.value) };
                let checked = sparse.measure_in(basis, q, forced)?;
                if checked.deterministic != reference.deterministic
                    || (reference.deterministic && checked.value != reference.value)
                {
                    report.mismatches.push(Mismatch {
                        op_index,
                        description: format!("init '{sym}' measurement disagreed on qubit {q}"),
                    });
                }
                if reference.deterministic {
                    report.deterministic += 1;
                }
                let target = if plus { 0 } else { 1 };
                let flip = crate::gates::one_qubit_action(crate::gates::init_flip(basis))?;
                if reference.value != target {
                    dense.apply_one_qubit(&flip, q)?;
                }
                if checked.value != target {
                    sparse.apply_one_qubit(&flip, q)?;
                }
            }
        }
        if !report.mismatches.is_empty() {
            break;
        }
    }
    Ok(report)
}
