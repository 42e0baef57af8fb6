//! Sparse stabilizer/destabilizer simulator.
//!
//! The state is two copies of a binary tableau compressed both row-wise and
//! column-wise: for each generator kind (stabilizer, destabilizer) and Pauli
//! component (X, Z) there is one set of qubit indices per generator row and
//! one set of generator indices per qubit column. The two stay in lockstep:
//! `q in row_x[i]` iff `i in col_x[q]`. Gate and measurement updates walk only
//! the sets they touch, so the cost of an operation follows the sparsity of
//! the representation rather than the qubit count.
//!
//! A qubit present in both the X and Z set of a row stores the product
//! `W = XZ`, not `Y = iXZ`; the factors of `i` live in a separate pair of
//! phase sets (`signs_minus`, `signs_i`) holding the real and imaginary sign
//! bits per stabilizer row. Destabilizer phases are never tracked.

use crate::gates::OneQubitAction;
use crate::sim::{MeasOutcome, SimError, StabilizerSimulator, TwoQubitKind};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::{BTreeSet, HashSet};
use std::hash::{BuildHasherDefault, Hasher};

/// Multiply-shift hasher for small integer keys; deterministic across runs.
#[derive(Default, Clone)]
pub struct IndexHasher(u64);

impl Hasher for IndexHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ u64::from(b)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_usize(&mut self, i: usize) {
        let mut h = (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        h ^= h >> 32;
        self.0 = h;
    }

    fn write_u64(&mut self, i: u64) {
        self.write_usize(i as usize);
    }
}

pub type IndexSet = HashSet<usize, BuildHasherDefault<IndexHasher>>;

fn toggle(set: &mut IndexSet, value: usize) {
    if !set.remove(&value) {
        set.insert(value);
    }
}

/// Row- and column-compressed generator table for one generator kind.
#[derive(Clone, Debug, Default)]
struct GenSide {
    row_x: Vec<IndexSet>,
    row_z: Vec<IndexSet>,
    col_x: Vec<IndexSet>,
    col_z: Vec<IndexSet>,
}

impl GenSide {
    fn with_size(n: usize) -> Self {
        GenSide {
            row_x: vec![IndexSet::default(); n],
            row_z: vec![IndexSet::default(); n],
            col_x: vec![IndexSet::default(); n],
            col_z: vec![IndexSet::default(); n],
        }
    }

    fn toggle_x(&mut self, gen: usize, q: usize) {
        toggle(&mut self.row_x[gen], q);
        toggle(&mut self.col_x[q], gen);
    }

    fn toggle_z(&mut self, gen: usize, q: usize) {
        toggle(&mut self.row_z[gen], q);
        toggle(&mut self.col_z[q], gen);
    }

    /// Multiply row `gen` by the row given as slices: symmetric difference of
    /// the component sets, keeping the column duals in step.
    fn mul_row(&mut self, gen: usize, other_x: &[usize], other_z: &[usize]) {
        for &q in other_x {
            self.toggle_x(gen, q);
        }
        for &q in other_z {
            self.toggle_z(gen, q);
        }
    }

    fn clear_row(&mut self, gen: usize) {
        for q in std::mem::take(&mut self.row_x[gen]) {
            self.col_x[q].remove(&gen);
        }
        for q in std::mem::take(&mut self.row_z[gen]) {
            self.col_z[q].remove(&gen);
        }
    }

    fn set_row(&mut self, gen: usize, xs: &[usize], zs: &[usize]) {
        self.clear_row(gen);
        for &q in xs {
            self.row_x[gen].insert(q);
            self.col_x[q].insert(gen);
        }
        for &q in zs {
            self.row_z[gen].insert(q);
            self.col_z[q].insert(gen);
        }
    }

    fn total_set_size(&self) -> usize {
        let sum = |v: &Vec<IndexSet>| v.iter().map(HashSet::len).sum::<usize>();
        sum(&self.row_x) + sum(&self.row_z) + sum(&self.col_x) + sum(&self.col_z)
    }
}

#[derive(Clone)]
pub struct SparseStabState {
    n: usize,
    stabs: GenSide,
    destabs: GenSide,
    signs_minus: IndexSet,
    signs_i: IndexSet,
    rng: ChaCha12Rng,
    touches: u64,
}

impl SparseStabState {
    /// Initialize `|0>^n`: stabilizer i is `Z_i`, destabilizer i is `X_i`.
    pub fn new(n: usize) -> Self {
        Self::with_seed(n, 0)
    }

    pub fn with_seed(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "state needs at least one qubit");
        let mut state = SparseStabState {
            n,
            stabs: GenSide::with_size(n),
            destabs: GenSide::with_size(n),
            signs_minus: IndexSet::default(),
            signs_i: IndexSet::default(),
            rng: ChaCha12Rng::seed_from_u64(seed),
            touches: 0,
        };
        for i in 0..n {
            state.stabs.row_z[i].insert(i);
            state.stabs.col_z[i].insert(i);
            state.destabs.row_x[i].insert(i);
            state.destabs.col_x[i].insert(i);
        }
        state
    }

    fn check_range(&self, q: usize) -> Result<(), SimError> {
        if q < self.n {
            Ok(())
        } else {
            Err(SimError::OutOfRange { qubit: q, n: self.n })
        }
    }

    /// Generators touched by single- and two-qubit gates since the last reset;
    /// used to check the column-set cost bound.
    pub fn touch_count(&self) -> u64 {
        self.touches
    }

    pub fn reset_touch_count(&mut self) {
        self.touches = 0;
    }

    /// Total cardinality of every row, column, and sign set.
    pub fn set_size_total(&self) -> usize {
        self.stabs.total_set_size()
            + self.destabs.total_set_size()
            + self.signs_minus.len()
            + self.signs_i.len()
    }

    fn stab_phase_exp(&self, i: usize) -> u8 {
        u8::from(self.signs_i.contains(&i)) + 2 * u8::from(self.signs_minus.contains(&i))
    }

    fn set_stab_phase_exp(&mut self, i: usize, e: u8) {
        if e & 1 == 0 {
            self.signs_i.remove(&i);
        } else {
            self.signs_i.insert(i);
        }
        if e & 2 == 0 {
            self.signs_minus.remove(&i);
        } else {
            self.signs_minus.insert(i);
        }
    }

    /// Deterministic Z measurement: the outcome is the sign of the product of
    /// the stabilizer generators selected by the destabilizer column at `q`.
    /// The state is unchanged.
    fn meas_determined(&mut self, q: usize) -> u8 {
        let mut factors: Vec<usize> = self.destabs.col_x[q].iter().copied().collect();
        factors.sort_unstable();
        let mut num_minuses = 0usize;
        let mut num_is = 0usize;
        let mut cumulative_x = IndexSet::default();
        for i in factors {
            if self.signs_minus.contains(&i) {
                num_minuses += 1;
            }
            if self.signs_i.contains(&i) {
                num_is += 1;
            }
            // Left-multiplying by generator i: its Z part passes the X part
            // accumulated so far.
            for qq in &self.stabs.row_z[i] {
                if cumulative_x.contains(qq) {
                    num_minuses += 1;
                }
            }
            for qq in &self.stabs.row_x[i] {
                toggle(&mut cumulative_x, *qq);
            }
        }
        if num_is % 4 == 2 {
            num_minuses += 1;
        }
        (num_minuses % 2) as u8
    }

    /// Non-deterministic Z measurement: remove the lowest-index anticommuting
    /// stabilizer, fold it into the other anticommuting generators, recycle it
    /// as the new destabilizer, and install (+/-) Z_q in its place.
    fn meas_undetermined(&mut self, q: usize, forced: Option<u8>) -> u8 {
        let removed = *self.stabs.col_x[q].iter().min().expect("non-empty column");
        let outcome = match forced {
            Some(v) => v,
            None => self.rng.random_range(0..2u8),
        };

        let mut stab_targets: Vec<usize> =
            self.stabs.col_x[q].iter().copied().filter(|&i| i != removed).collect();
        stab_targets.sort_unstable();
        let mut destab_targets: Vec<usize> =
            self.destabs.col_x[q].iter().copied().filter(|&i| i != removed).collect();
        destab_targets.sort_unstable();

        let removed_x: Vec<usize> = self.stabs.row_x[removed].iter().copied().collect();
        let removed_z: Vec<usize> = self.stabs.row_z[removed].iter().copied().collect();
        let removed_phase = self.stab_phase_exp(removed);

        // Sign updates for S_i <- S_removed * S_i, before the sets change.
        for &i in &stab_targets {
            let mut reorder = 0u8;
            for qq in &removed_z {
                if self.stabs.row_x[i].contains(qq) {
                    reorder ^= 1;
                }
            }
            let e = (removed_phase + self.stab_phase_exp(i) + 2 * reorder) & 3;
            self.set_stab_phase_exp(i, e);
        }
        for &i in &stab_targets {
            self.stabs.mul_row(i, &removed_x, &removed_z);
        }
        // Destabilizers pick up the same factor; their phases are untracked.
        for &i in &destab_targets {
            self.destabs.mul_row(i, &removed_x, &removed_z);
        }

        // The removed stabilizer becomes the destabilizer partner of the new
        // stabilizer (+/-) Z_q.
        self.destabs.set_row(removed, &removed_x, &removed_z);
        self.stabs.set_row(removed, &[], &[q]);
        self.set_stab_phase_exp(removed, 2 * outcome);
        outcome
    }

    /// Check every structural invariant; O(n^2), intended for tests.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n;
        for (name, side) in [("stab", &self.stabs), ("destab", &self.destabs)] {
            for i in 0..n {
                for q in &side.row_x[i] {
                    if !side.col_x[*q].contains(&i) {
                        return Err(format!("{name} row_x[{i}] not mirrored in col_x[{q}]"));
                    }
                }
                for q in &side.row_z[i] {
                    if !side.col_z[*q].contains(&i) {
                        return Err(format!("{name} row_z[{i}] not mirrored in col_z[{q}]"));
                    }
                }
            }
            for q in 0..n {
                for i in &side.col_x[q] {
                    if !side.row_x[*i].contains(&q) {
                        return Err(format!("{name} col_x[{q}] not mirrored in row_x[{i}]"));
                    }
                }
                for i in &side.col_z[q] {
                    if !side.row_z[*i].contains(&q) {
                        return Err(format!("{name} col_z[{q}] not mirrored in row_z[{i}]"));
                    }
                }
            }
        }
        let pairing = |ax: &IndexSet, az: &IndexSet, bx: &IndexSet, bz: &IndexSet| -> usize {
            let overlap = |a: &IndexSet, b: &IndexSet| a.iter().filter(|q| b.contains(q)).count();
            (overlap(ax, bz) + overlap(az, bx)) % 2
        };
        for i in 0..n {
            for j in 0..n {
                let sym = pairing(
                    &self.stabs.row_x[i],
                    &self.stabs.row_z[i],
                    &self.destabs.row_x[j],
                    &self.destabs.row_z[j],
                );
                if sym != usize::from(i == j) {
                    return Err(format!("stabilizer {i} / destabilizer {j} pairing broken"));
                }
                if i != j {
                    if pairing(
                        &self.stabs.row_x[i],
                        &self.stabs.row_z[i],
                        &self.stabs.row_x[j],
                        &self.stabs.row_z[j],
                    ) != 0
                    {
                        return Err(format!("stabilizers {i} and {j} anticommute"));
                    }
                    if pairing(
                        &self.destabs.row_x[i],
                        &self.destabs.row_z[i],
                        &self.destabs.row_x[j],
                        &self.destabs.row_z[j],
                    ) != 0
                    {
                        return Err(format!("destabilizers {i} and {j} anticommute"));
                    }
                }
            }
        }
        for i in 0..n {
            let w = self.stabs.row_x[i].iter().filter(|q| self.stabs.row_z[i].contains(q)).count();
            if (w % 2 == 1) != self.signs_i.contains(&i) {
                return Err(format!("stabilizer {i} stores {w} W factors but i-bit is {}", self.signs_i.contains(&i)));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn corrupt_sign_for_test(&mut self, i: usize) {
        toggle(&mut self.signs_minus, i);
    }
}

impl StabilizerSimulator for SparseStabState {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_one_qubit(&mut self, action: &OneQubitAction, q: usize) -> Result<(), SimError> {
        self.check_range(q)?;
        for kind in [0, 1] {
            let side = if kind == 0 { &self.stabs } else { &self.destabs };
            let mut gens: Vec<usize> = side.col_x[q].union(&side.col_z[q]).copied().collect();
            gens.sort_unstable();
            self.touches += gens.len() as u64;
            for i in gens {
                let side = if kind == 0 { &mut self.stabs } else { &mut self.destabs };
                let x = side.row_x[i].contains(&q);
                let z = side.row_z[i].contains(&q);
                let (nx, nz, e) = action.apply(x, z, 0);
                if nx != x {
                    side.toggle_x(i, q);
                }
                if nz != z {
                    side.toggle_z(i, q);
                }
                if kind == 0 && e != 0 {
                    let folded = (self.stab_phase_exp(i) + e) & 3;
                    self.set_stab_phase_exp(i, folded);
                }
            }
        }
        Ok(())
    }

    fn apply_two_qubit(&mut self, kind: TwoQubitKind, a: usize, b: usize) -> Result<(), SimError> {
        self.check_range(a)?;
        self.check_range(b)?;
        if a == b {
            return Err(SimError::DistinctQubits);
        }
        match kind {
            TwoQubitKind::Cnot => {
                let (c, t) = (a, b);
                for side in [&mut self.stabs, &mut self.destabs] {
                    let gens: Vec<usize> = side.col_x[c].iter().copied().collect();
                    self.touches += gens.len() as u64;
                    for i in gens {
                        side.toggle_x(i, t);
                    }
                    let gens: Vec<usize> = side.col_z[t].iter().copied().collect();
                    self.touches += gens.len() as u64;
                    for i in gens {
                        side.toggle_z(i, c);
                    }
                }
            }
            TwoQubitKind::Cz => {
                // X on either qubit grows a Z on the other; a W appears on
                // both qubits exactly when both had X, and the reordering
                // costs a sign.
                let minus: Vec<usize> = self.stabs.col_x[a]
                    .intersection(&self.stabs.col_x[b])
                    .copied()
                    .collect();
                for side in [&mut self.stabs, &mut self.destabs] {
                    let gens: Vec<usize> = side.col_x[a].iter().copied().collect();
                    self.touches += gens.len() as u64;
                    for i in gens {
                        side.toggle_z(i, b);
                    }
                    let gens: Vec<usize> = side.col_x[b].iter().copied().collect();
                    self.touches += gens.len() as u64;
                    for i in gens {
                        side.toggle_z(i, a);
                    }
                }
                for i in minus {
                    toggle(&mut self.signs_minus, i);
                }
            }
            TwoQubitKind::Swap => {
                for side in [&mut self.stabs, &mut self.destabs] {
                    for plane_x in [true, false] {
                        let (col_a, col_b) = if plane_x {
                            (&side.col_x[a], &side.col_x[b])
                        } else {
                            (&side.col_z[a], &side.col_z[b])
                        };
                        let only_a: Vec<usize> = col_a.difference(col_b).copied().collect();
                        let only_b: Vec<usize> = col_b.difference(col_a).copied().collect();
                        self.touches += (only_a.len() + only_b.len()) as u64;
                        for i in only_a.into_iter().chain(only_b) {
                            if plane_x {
                                side.toggle_x(i, a);
                                side.toggle_x(i, b);
                            } else {
                                side.toggle_z(i, a);
                                side.toggle_z(i, b);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn measure_z(&mut self, qubit: usize, forced: Option<u8>) -> Result<MeasOutcome, SimError> {
        self.check_range(qubit)?;
        if self.stabs.col_x[qubit].is_empty() {
            Ok(MeasOutcome { value: self.meas_determined(qubit), deterministic: true })
        } else {
            Ok(MeasOutcome { value: self.meas_undetermined(qubit, forced), deterministic: false })
        }
    }

    fn stab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>, u8) {
        (
            self.stabs.row_x[index].iter().copied().collect(),
            self.stabs.row_z[index].iter().copied().collect(),
            self.stab_phase_exp(index),
        )
    }

    fn destab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
        (
            self.destabs.row_x[index].iter().copied().collect(),
            self.destabs.row_z[index].iter().copied().collect(),
        )
    }

    fn destabs_anticommuting_with(&self, op_x: &BTreeSet<usize>, op_z: &BTreeSet<usize>) -> Vec<usize> {
        let mut candidates = BTreeSet::new();
        for &q in op_z {
            candidates.extend(self.destabs.col_x[q].iter().copied());
        }
        for &q in op_x {
            candidates.extend(self.destabs.col_z[q].iter().copied());
        }
        candidates
            .into_iter()
            .filter(|&j| {
                let mut par = 0usize;
                par += op_z.iter().filter(|q| self.destabs.row_x[j].contains(q)).count();
                par += op_x.iter().filter(|q| self.destabs.row_z[j].contains(q)).count();
                par % 2 == 1
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{pairs, qubits, QuantumCircuit};
    use crate::sim::CanonicalTableau;

    #[test]
    fn fresh_state_layout() {
        let state = SparseStabState::new(4);
        state.validate().unwrap();
        assert_eq!(state.set_size_total(), 4 * 4); // one row + one col entry per generator
        for q in 0..4 {
            let (xs, zs, e) = state.stab_row(q);
            assert!(xs.is_empty());
            assert_eq!(zs, [q].into());
            assert_eq!(e, 0);
        }
    }

    #[test]
    #[should_panic(expected = "at least one qubit")]
    fn zero_qubits_rejected() {
        SparseStabState::new(0);
    }

    #[test]
    fn deterministic_measurement_of_fresh_state() {
        let mut state = SparseStabState::new(3);
        for q in 0..3 {
            let m = state.measure_z(q, None).unwrap();
            assert_eq!((m.value, m.deterministic), (0, true));
        }
        state.validate().unwrap();
    }

    #[test]
    fn x_flip_measurements() {
        let mut state = SparseStabState::new(4);
        state.run_gate("X", &qubits([0, 1]), None).unwrap();
        let out = state.run_gate("measure Z", &qubits([0, 1, 3]), None).unwrap();
        assert_eq!(out, [(0, 1), (1, 1), (3, 0)].into_iter().collect());
        state.validate().unwrap();
    }

    #[test]
    fn hadamard_involution_restores_state() {
        let mut state = SparseStabState::new(1);
        state.run_gate("H", &qubits([0]), None).unwrap();
        let (xs, zs, _) = state.stab_row(0);
        assert_eq!((xs, zs), ([0].into(), BTreeSet::new()));
        state.run_gate("H", &qubits([0]), None).unwrap();
        let (xs, zs, e) = state.stab_row(0);
        assert_eq!((xs, zs, e), (BTreeSet::new(), [0].into(), 0));
        state.validate().unwrap();
    }

    #[test]
    fn phase_gate_makes_plus_i() {
        let mut state = SparseStabState::new(1);
        state.run_gate("H", &qubits([0]), None).unwrap();
        state.run_gate("S", &qubits([0]), None).unwrap();
        // Stabilizer is Y = i XZ: one W factor plus one stored i.
        let (xs, zs, e) = state.stab_row(0);
        assert_eq!((xs, zs, e), ([0].into(), [0].into(), 1));
        assert!(!state.stabs.col_x[0].is_empty(), "Z measurement must be non-deterministic");
        state.validate().unwrap();
        // S four more times round-trips sets and signs.
        let before = state.tableau_json();
        for _ in 0..4 {
            state.run_gate("S", &qubits([0]), None).unwrap();
        }
        assert_eq!(state.tableau_json(), before);
    }

    #[test]
    fn bell_pair_and_forced_collapse() {
        let mut state = SparseStabState::new(2);
        state.run_gate("H", &qubits([0]), None).unwrap();
        state.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        let (stabs, _) = state.stab_strings();
        assert_eq!(stabs, vec!["  XX", "  ZZ"]);
        let m = state.measure_z(0, Some(1)).unwrap();
        assert_eq!((m.value, m.deterministic), (1, false));
        let m = state.measure_z(1, None).unwrap();
        assert_eq!((m.value, m.deterministic), (1, true));
        // Repeating a measurement is deterministic and stable.
        let m = state.measure_z(0, None).unwrap();
        assert_eq!((m.value, m.deterministic), (1, true));
        state.validate().unwrap();
    }

    #[test]
    fn forced_collapse_to_minus_z() {
        let mut state = SparseStabState::new(1);
        state.run_gate("H", &qubits([0]), None).unwrap();
        let m = state.measure_z(0, Some(1)).unwrap();
        assert_eq!(m.value, 1);
        let (stabs, _) = state.stab_strings();
        assert_eq!(stabs, vec![" -Z"]);
        state.validate().unwrap();
    }

    #[test]
    fn golden_three_qubit_tableau() {
        let mut state = SparseStabState::new(3);
        state.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        state.run_gate("X", &qubits([0]), None).unwrap();
        let (stabs, destabs) = state.stab_strings();
        assert_eq!(stabs, vec![" -ZII", " -ZZI", "  IIZ"]);
        assert_eq!(destabs, vec!["  XXI", "  IXI", "  IIX"]);
        let mut op = QuantumCircuit::new();
        op.append("Z", qubits([0, 1])).unwrap();
        assert_eq!(state.logical_sign(&op).unwrap(), 1);
        let mut op = QuantumCircuit::new();
        op.append("Z", qubits([2])).unwrap();
        assert_eq!(state.logical_sign(&op).unwrap(), 0);
        let mut op = QuantumCircuit::new();
        op.append("X", qubits([0])).unwrap();
        assert_eq!(state.logical_sign(&op), Err(SimError::NotStabilizer));
    }

    #[test]
    fn logical_sign_on_fresh_state() {
        let state = SparseStabState::new(5);
        for q in 0..5 {
            let mut op = QuantumCircuit::new();
            op.append("Z", qubits([q])).unwrap();
            assert_eq!(state.logical_sign(&op).unwrap(), 0);
        }
    }

    #[test]
    fn init_basis_symbols() {
        for (sym, check, sign) in [
            ("init |0>", "Z", 0u8),
            ("init |1>", "Z", 1),
            ("init |+>", "X", 0),
            ("init |->", "X", 1),
            ("init |+i>", "Y", 0),
            ("init |-i>", "Y", 1),
        ] {
            let mut state = SparseStabState::with_seed(1, 7);
            // Scramble first so the init has work to do.
            state.run_gate("H", &qubits([0]), None).unwrap();
            state.run_gate("S", &qubits([0]), None).unwrap();
            state.run_gate(sym, &qubits([0]), None).unwrap();
            let mut op = QuantumCircuit::new();
            op.append(check, qubits([0])).unwrap();
            assert_eq!(state.logical_sign(&op).unwrap(), sign, "{sym}");
            state.validate().unwrap();
        }
    }

    #[test]
    fn repeated_init_is_idempotent() {
        let mut state = SparseStabState::with_seed(3, 11);
        state.run_gate("H", &qubits([0, 1, 2]), None).unwrap();
        state.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        state.run_gate("init |0>", &qubits([1]), None).unwrap();
        let canon = CanonicalTableau::from_simulator(&state);
        state.run_gate("init |0>", &qubits([1]), None).unwrap();
        assert_eq!(CanonicalTableau::from_simulator(&state), canon);
        let m = state.measure_z(1, None).unwrap();
        assert_eq!((m.value, m.deterministic), (0, true));
    }

    #[test]
    fn cnot_twice_is_identity() {
        let mut state = SparseStabState::with_seed(4, 3);
        state.run_gate("H", &qubits([0, 2]), None).unwrap();
        state.run_gate("S", &qubits([2]), None).unwrap();
        let before = state.tableau_json();
        state.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        state.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        assert_eq!(state.tableau_json(), before);
        state.validate().unwrap();
    }

    #[test]
    fn measure_x_and_y_bases() {
        let mut state = SparseStabState::new(1);
        let m = state.measure_in(crate::pauli::Pauli::X, 0, Some(0)).unwrap();
        assert_eq!((m.value, m.deterministic), (0, false));
        let m = state.measure_in(crate::pauli::Pauli::X, 0, None).unwrap();
        assert_eq!((m.value, m.deterministic), (0, true));
        // |+i> state: Y measurement deterministic 0.
        let mut state = SparseStabState::new(1);
        state.run_gate("H", &qubits([0]), None).unwrap();
        state.run_gate("S", &qubits([0]), None).unwrap();
        let m = state.measure_in(crate::pauli::Pauli::Y, 0, None).unwrap();
        assert_eq!((m.value, m.deterministic), (0, true));
        state.validate().unwrap();
    }

    #[test]
    fn touch_count_respects_column_bound() {
        let mut state = SparseStabState::with_seed(8, 5);
        // Build some entanglement first.
        for q in 0..8 {
            state.run_gate("H", &qubits([q]), None).unwrap();
        }
        for p in 0..7 {
            state.run_gate("CNOT", &pairs([(p, p + 1)]), None).unwrap();
        }
        for q in 0..8 {
            let cols = state.stabs.col_x[q].len()
                + state.stabs.col_z[q].len()
                + state.destabs.col_x[q].len()
                + state.destabs.col_z[q].len();
            state.reset_touch_count();
            state.run_gate("S", &qubits([q]), None).unwrap();
            assert!(state.touch_count() <= cols as u64);
        }
    }
}
