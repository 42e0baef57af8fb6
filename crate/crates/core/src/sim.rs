//! Common simulator interface: gate dispatch through the catalog, Pauli-basis
//! measurement and initialization, stabilizer-sign queries, and tableau
//! rendering shared by the sparse and dense backends.

use crate::circuits::{GateLocation, LocationSet, QuantumCircuit};
use crate::gates::{self, CliffordSpec, OneQubitAction};
use crate::pauli::{render_row, Pauli, SparsePauli};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error(transparent)]
    Gate(#[from] gates::GateError),
    #[error("qubit {qubit} out of range for {n}-qubit state")]
    OutOfRange { qubit: usize, n: usize },
    #[error("gate '{symbol}' applied to location of wrong arity")]
    LocationArity { symbol: String },
    #[error("two-qubit gate needs distinct qubits")]
    DistinctQubits,
    #[error("forced outcome must be 0 or 1")]
    BadForcedOutcome,
    #[error("operator is not an element of the stabilizer group (up to sign)")]
    NotStabilizer,
    #[error("operator circuit must be a single tick of X/Y/Z gates")]
    NotPauliCircuit,
}

/// Result of a single Pauli-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasOutcome {
    pub value: u8,
    pub deterministic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoQubitKind {
    Cnot,
    Cz,
    Swap,
}

/// A stabilizer-state simulator tracking stabilizer and destabilizer
/// generators of an n-qubit pure state.
pub trait StabilizerSimulator {
    fn num_qubits(&self) -> usize;

    /// Apply a one-qubit Clifford by its conjugation action.
    fn apply_one_qubit(&mut self, action: &OneQubitAction, qubit: usize) -> Result<(), SimError>;

    fn apply_two_qubit(&mut self, kind: TwoQubitKind, a: usize, b: usize) -> Result<(), SimError>;

    /// Measure Z on `qubit`. A forced value replaces the coin flip of a
    /// non-deterministic outcome; deterministic outcomes are unaffected.
    fn measure_z(&mut self, qubit: usize, forced: Option<u8>) -> Result<MeasOutcome, SimError>;

    /// Stabilizer rows as (X set, Z set, i-exponent of the XZ component form).
    fn stab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>, u8);

    /// Destabilizer rows; phases are not tracked.
    fn destab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>);

    /// Indices of destabilizer generators anticommuting with the Pauli
    /// operator given by its X/Z support sets, in ascending order.
    fn destabs_anticommuting_with(&self, op_x: &BTreeSet<usize>, op_z: &BTreeSet<usize>) -> Vec<usize>;

    /// Measure in an arbitrary Pauli basis via the catalog basis change.
    fn measure_in(&mut self, basis: Pauli, qubit: usize, forced: Option<u8>) -> Result<MeasOutcome, SimError> {
        let (pre, post) = gates::basis_change(basis);
        for sym in pre {
            self.apply_one_qubit(&gates::one_qubit_action(sym)?, qubit)?;
        }
        let outcome = self.measure_z(qubit, forced)?;
        for sym in post {
            self.apply_one_qubit(&gates::one_qubit_action(sym)?, qubit)?;
        }
        Ok(outcome)
    }

    /// (Re)initialize a qubit into a Pauli-basis eigenstate: measure in that
    /// basis and flip if the outcome does not match the target eigenstate.
    fn init_in(&mut self, basis: Pauli, plus: bool, qubit: usize, forced: Option<u8>) -> Result<(), SimError> {
        let outcome = self.measure_in(basis, qubit, forced)?;
        let target = if plus { 0 } else { 1 };
        if outcome.value != target {
            self.apply_one_qubit(&gates::one_qubit_action(gates::init_flip(basis))?, qubit)?;
        }
        Ok(())
    }

    /// Apply a gate by catalog symbol to a set of locations. Measurements
    /// return the outcome for every measured location.
    fn run_gate(
        &mut self,
        symbol: &str,
        locations: &LocationSet,
        forced: Option<u8>,
    ) -> Result<BTreeMap<usize, u8>, SimError> {
        if let Some(v) = forced {
            if v > 1 {
                return Err(SimError::BadForcedOutcome);
            }
        }
        let spec = gates::lookup(symbol)?;
        let mut outcomes = BTreeMap::new();
        for loc in locations {
            match (&spec, loc) {
                (CliffordSpec::OneQubit(action), GateLocation::Qudit(q)) => {
                    self.apply_one_qubit(action, *q)?;
                }
                (CliffordSpec::TwoQubit(_), GateLocation::Tuple(v)) if v.len() == 2 => {
                    let kind = match symbol {
                        "CZ" => TwoQubitKind::Cz,
                        "SWAP" => TwoQubitKind::Swap,
                        _ => TwoQubitKind::Cnot,
                    };
                    self.apply_two_qubit(kind, v[0], v[1])?;
                }
                (CliffordSpec::Measure { basis }, GateLocation::Qudit(q)) => {
                    let m = self.measure_in(*basis, *q, forced)?;
                    outcomes.insert(*q, m.value);
                }
                (CliffordSpec::Init { basis, plus }, GateLocation::Qudit(q)) => {
                    self.init_in(*basis, *plus, *q, forced)?;
                }
                _ => return Err(SimError::LocationArity { symbol: symbol.to_string() }),
            }
        }
        Ok(outcomes)
    }

    /// Sign of a stabilizer-group element given as a one-tick Pauli circuit:
    /// 0 for +1, 1 for -1. Errors if the operator is not in the group up to
    /// sign.
    fn logical_sign(&self, operator: &QuantumCircuit) -> Result<u8, SimError> {
        let op = pauli_from_circuit(operator)?;
        let factors = self.destabs_anticommuting_with(&op.xs, &op.zs);
        let mut acc = SparsePauli::identity();
        for j in factors {
            let (xs, zs, e) = self.stab_row(j);
            let mut gen = SparsePauli { xs, zs, phase_exp: e };
            gen.mul(&acc);
            acc = gen;
        }
        if acc.xs != op.xs || acc.zs != op.zs {
            return Err(SimError::NotStabilizer);
        }
        match (acc.phase_exp + 4 - op.phase_exp) & 3 {
            0 => Ok(0),
            2 => Ok(1),
            _ => Err(SimError::NotStabilizer),
        }
    }

    /// Render the stabilizer and destabilizer tables as aligned text rows.
    fn stab_strings(&self) -> (Vec<String>, Vec<String>) {
        let n = self.num_qubits();
        let mut stabs = Vec::with_capacity(n);
        let mut destabs = Vec::with_capacity(n);
        for i in 0..n {
            let (xs, zs, e) = self.stab_row(i);
            stabs.push(render_row(n, &xs, &zs, e, true));
            let (xs, zs) = self.destab_row(i);
            destabs.push(render_row(n, &xs, &zs, 0, false));
        }
        (stabs, destabs)
    }

    /// Print the stabilizer table to stdout and return the rendered rows.
    fn print_stabs(&self) -> (Vec<String>, Vec<String>) {
        let (stabs, destabs) = self.stab_strings();
        for row in &stabs {
            println!("{row}");
        }
        println!("-------------------------------");
        for row in &destabs {
            println!("{row}");
        }
        (stabs, destabs)
    }

    /// JSON dump of the full generator tables for oracle diffing.
    fn tableau_json(&self) -> serde_json::Value {
        let n = self.num_qubits();
        let sets = |rows: Vec<(Vec<usize>, Vec<usize>)>| -> serde_json::Value {
            serde_json::json!(rows)
        };
        let mut stab_rows = Vec::new();
        let mut destab_rows = Vec::new();
        let mut minus = Vec::new();
        let mut imag = Vec::new();
        for i in 0..n {
            let (xs, zs, e) = self.stab_row(i);
            stab_rows.push((xs.into_iter().collect::<Vec<_>>(), zs.into_iter().collect::<Vec<_>>()));
            if e >= 2 {
                minus.push(i);
            }
            if e % 2 == 1 {
                imag.push(i);
            }
            let (xs, zs) = self.destab_row(i);
            destab_rows.push((xs.into_iter().collect::<Vec<_>>(), zs.into_iter().collect::<Vec<_>>()));
        }
        serde_json::json!({
            "n": n,
            "stabs": sets(stab_rows),
            "destabs": sets(destab_rows),
            "signs_minus": minus,
            "signs_i": imag,
        })
    }
}

/// Interpret a one-tick circuit of X/Y/Z gates as a sparse Pauli operator.
pub fn pauli_from_circuit(circuit: &QuantumCircuit) -> Result<SparsePauli, SimError> {
    if circuit.len() != 1 {
        return Err(SimError::NotPauliCircuit);
    }
    let mut op = SparsePauli::identity();
    for (_, symbol, locations, _) in circuit.items() {
        let pauli = Pauli::from_str(symbol).ok_or(SimError::NotPauliCircuit)?;
        for loc in locations {
            match loc {
                GateLocation::Qudit(q) => op.mul_single(pauli, *q),
                GateLocation::Tuple(_) => return Err(SimError::NotPauliCircuit),
            }
        }
    }
    Ok(op)
}

/// Canonical generator matrix: reduced row echelon form over GF(2) of the
/// stabilizer rows with exact phase tracking. Equal states export equal
/// canonical forms, giving a state-equality decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTableau {
    pub n: usize,
    /// Rows as (X set, Z set, sign bit) after folding W factors into Y.
    pub rows: Vec<(Vec<usize>, Vec<usize>, u8)>,
}

impl CanonicalTableau {
    pub fn from_simulator<S: StabilizerSimulator + ?Sized>(sim: &S) -> Self {
        let n = sim.num_qubits();
        let rows = (0..n)
            .map(|i| {
                let (xs, zs, e) = sim.stab_row(i);
                SparsePauli { xs, zs, phase_exp: e }
            })
            .collect();
        Self::from_rows(n, rows)
    }

    pub fn from_rows(n: usize, mut rows: Vec<SparsePauli>) -> Self {
        // Gaussian elimination with column order X_0..X_{n-1}, Z_0..Z_{n-1}.
        let col_set = |p: &SparsePauli, col: usize| {
            if col < n {
                p.xs.contains(&col)
            } else {
                p.zs.contains(&(col - n))
            }
        };
        let mut pivot_row = 0;
        for col in 0..2 * n {
            let Some(found) = (pivot_row..rows.len()).find(|&r| col_set(&rows[r], col)) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && col_set(row, col) {
                    row.mul(&pivot);
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        let out = rows
            .into_iter()
            .filter(|r| !r.is_identity())
            .map(|r| {
                let sign = r.y_folded_sign();
                (r.xs.into_iter().collect(), r.zs.into_iter().collect(), sign)
            })
            .collect();
        CanonicalTableau { n, rows: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::qubits;

    #[test]
    fn pauli_circuit_parsing() {
        let mut qc = QuantumCircuit::new();
        qc.append_groups(
            [("Z".to_string(), qubits([0, 1])), ("X".to_string(), qubits([2]))],
            Default::default(),
        )
        .unwrap();
        let op = pauli_from_circuit(&qc).unwrap();
        assert_eq!(op.zs, [0, 1].into_iter().collect());
        assert_eq!(op.xs, [2].into_iter().collect());

        let mut two_ticks = QuantumCircuit::new();
        two_ticks.append("Z", qubits([0])).unwrap();
        two_ticks.append("Z", qubits([1])).unwrap();
        assert_eq!(pauli_from_circuit(&two_ticks), Err(SimError::NotPauliCircuit));

        let mut bad = QuantumCircuit::new();
        bad.append("H", qubits([0])).unwrap();
        assert_eq!(pauli_from_circuit(&bad), Err(SimError::NotPauliCircuit));
    }
}
