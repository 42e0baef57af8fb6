//! Dense stabilizer simulator: a 2n x (2n+1) binary tableau with rows packed
//! into machine words. Rows 0..n hold destabilizer generators, rows n..2n the
//! stabilizers. Serves as the exact oracle for the sparse simulator and as the
//! O(n)-per-gate baseline in benchmarks.
//!
//! Only H, S and CNOT touch the tableau directly; every other catalog gate is
//! applied through its H/S/CNOT decomposition.

use crate::gates::{hs_decomposition_for, OneQubitAction};
use crate::sim::{MeasOutcome, SimError, StabilizerSimulator, TwoQubitKind};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeSet;

#[derive(Clone)]
pub struct DenseTableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    /// Exponent of i (mod 4) per row; destabilizer phases are kept but carry
    /// no meaning for the represented state.
    phase: Vec<u8>,
    rng: ChaCha12Rng,
}

impl DenseTableau {
    pub fn new(n: usize) -> Self {
        Self::with_seed(n, 0)
    }

    pub fn with_seed(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "state needs at least one qubit");
        let words = n.div_ceil(64);
        let mut sim = DenseTableau {
            n,
            words,
            x: vec![0; 2 * n * words],
            z: vec![0; 2 * n * words],
            phase: vec![0; 2 * n],
            rng: ChaCha12Rng::seed_from_u64(seed),
        };
        for i in 0..n {
            sim.x[i * words + (i >> 6)] |= 1 << (i & 63); // destabilizer X_i
            let s = n + i;
            sim.z[s * words + (i >> 6)] |= 1 << (i & 63); // stabilizer Z_i
        }
        sim
    }

    fn check_range(&self, q: usize) -> Result<(), SimError> {
        if q < self.n {
            Ok(())
        } else {
            Err(SimError::OutOfRange { qubit: q, n: self.n })
        }
    }

    fn hadamard(&mut self, q: usize) {
        let w = q >> 6;
        let m = 1u64 << (q & 63);
        for row in 0..2 * self.n {
            let idx = row * self.words + w;
            let xb = self.x[idx] & m;
            let zb = self.z[idx] & m;
            if xb != 0 && zb != 0 {
                // W = XZ maps to ZX = -XZ.
                self.phase[row] = (self.phase[row] + 2) & 3;
            }
            let diff = xb ^ zb;
            self.x[idx] ^= diff;
            self.z[idx] ^= diff;
        }
    }

    fn phase_gate(&mut self, q: usize) {
        let w = q >> 6;
        let m = 1u64 << (q & 63);
        for row in 0..2 * self.n {
            let idx = row * self.words + w;
            if self.x[idx] & m != 0 {
                self.phase[row] = (self.phase[row] + 1) & 3;
                self.z[idx] ^= m;
            }
        }
    }

    fn cnot(&mut self, c: usize, t: usize) {
        let (wc, mc) = (c >> 6, 1u64 << (c & 63));
        let (wt, mt) = (t >> 6, 1u64 << (t & 63));
        for row in 0..2 * self.n {
            let base = row * self.words;
            if self.x[base + wc] & mc != 0 {
                self.x[base + wt] ^= mt;
            }
            if self.z[base + wt] & mt != 0 {
                self.z[base + wc] ^= mc;
            }
        }
    }

    /// Left-multiply row `dst` by row `src`: row_dst <- row_src * row_dst.
    fn row_mult_left(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        let mut reorder = 0u32;
        for w in 0..self.words {
            reorder ^= (self.z[s + w] & self.x[d + w]).count_ones() & 1;
        }
        self.phase[dst] = (self.phase[src] + self.phase[dst] + 2 * reorder as u8) & 3;
        for w in 0..self.words {
            self.x[d + w] ^= self.x[s + w];
            self.z[d + w] ^= self.z[s + w];
        }
    }

    fn copy_row(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words, dst * self.words);
        for w in 0..self.words {
            self.x[d + w] = self.x[s + w];
            self.z[d + w] = self.z[s + w];
        }
        self.phase[dst] = self.phase[src];
    }

    fn row_bit(&self, row: usize, plane_x: bool, q: usize) -> bool {
        let idx = row * self.words + (q >> 6);
        let m = 1u64 << (q & 63);
        if plane_x {
            self.x[idx] & m != 0
        } else {
            self.z[idx] & m != 0
        }
    }

    fn row_sets(&self, row: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let base = row * self.words;
        let mut xs = BTreeSet::new();
        let mut zs = BTreeSet::new();
        for q in 0..self.n {
            let m = 1u64 << (q & 63);
            if self.x[base + (q >> 6)] & m != 0 {
                xs.insert(q);
            }
            if self.z[base + (q >> 6)] & m != 0 {
                zs.insert(q);
            }
        }
        (xs, zs)
    }

    /// Structural invariants: the destabilizer in row i is the anticommuting
    /// partner of the stabilizer in row n+i, stabilizers mutually commute,
    /// and the 2n rows have full rank over GF(2).
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n;
        let sym = |a: usize, b: usize| -> u32 {
            let (ab, bb) = (a * self.words, b * self.words);
            let mut par = 0;
            for w in 0..self.words {
                par ^= (self.x[ab + w] & self.z[bb + w]).count_ones() & 1;
                par ^= (self.z[ab + w] & self.x[bb + w]).count_ones() & 1;
            }
            par
        };
        for i in 0..n {
            for j in 0..n {
                let expect = u32::from(i == j);
                if sym(i, n + j) != expect {
                    return Err(format!("destabilizer {i} pairing with stabilizer {j} broken"));
                }
                if sym(n + i, n + j) != 0 {
                    return Err(format!("stabilizers {i} and {j} fail to commute"));
                }
            }
        }
        // Full rank: eliminate rows over GF(2).
        let mut rows: Vec<Vec<u64>> = (0..2 * n)
            .map(|r| {
                let base = r * self.words;
                let mut v = self.x[base..base + self.words].to_vec();
                v.extend_from_slice(&self.z[base..base + self.words]);
                v
            })
            .collect();
        let mut rank = 0;
        for col in 0..2 * n {
            // Columns 0..n live in the X plane, n..2n in the Z plane.
            let (w, m) = if col < n {
                (col >> 6, 1u64 << (col & 63))
            } else {
                (self.words + ((col - n) >> 6), 1u64 << ((col - n) & 63))
            };
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & m != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & m != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        if rank != 2 * n {
            return Err(format!("tableau rank {rank}, expected {}", 2 * n));
        }
        Ok(())
    }
}

impl StabilizerSimulator for DenseTableau {
    fn num_qubits(&self) -> usize {
        self.n
    }

    fn apply_one_qubit(&mut self, action: &OneQubitAction, qubit: usize) -> Result<(), SimError> {
        self.check_range(qubit)?;
        for sym in hs_decomposition_for(action) {
            match *sym {
                "H" => self.hadamard(qubit),
                _ => self.phase_gate(qubit),
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
            TwoQubitKind::Cnot => self.cnot(a, b),
            TwoQubitKind::Cz => {
                self.hadamard(b);
                self.cnot(a, b);
                self.hadamard(b);
            }
            TwoQubitKind::Swap => {
                self.cnot(a, b);
                self.cnot(b, a);
                self.cnot(a, b);
            }
        }
        Ok(())
    }

    fn measure_z(&mut self, qubit: usize, forced: Option<u8>) -> Result<MeasOutcome, SimError> {
        self.check_range(qubit)?;
        let n = self.n;
        let anticommuting: Vec<usize> =
            (n..2 * n).filter(|&row| self.row_bit(row, true, qubit)).collect();

        if anticommuting.is_empty() {
            // Deterministic: multiply out the stabilizer factors selected by
            // the destabilizer rows that anticommute with Z_qubit.
            let mut acc_x = vec![0u64; self.words];
            let mut acc_e = 0u8;
            for row in 0..n {
                if !self.row_bit(row, true, qubit) {
                    continue;
                }
                let s = (n + row) * self.words;
                let mut reorder = 0u32;
                for w in 0..self.words {
                    reorder ^= (self.z[s + w] & acc_x[w]).count_ones() & 1;
                }
                acc_e = (acc_e + self.phase[n + row] + 2 * reorder as u8) & 3;
                for w in 0..self.words {
                    acc_x[w] ^= self.x[s + w];
                }
            }
            debug_assert!(acc_e % 2 == 0);
            return Ok(MeasOutcome { value: acc_e / 2, deterministic: true });
        }

        let value = match forced {
            Some(v) => v,
            None => self.rng.random_range(0..2u8),
        };
        let removed = anticommuting[0];
        for row in 0..2 * n {
            if row != removed && self.row_bit(row, true, qubit) {
                self.row_mult_left(removed, row);
            }
        }
        // The removed stabilizer becomes the new destabilizer partner; its
        // slot is refilled with (+/-) Z_qubit.
        self.copy_row(removed, removed - n);
        let base = removed * self.words;
        for w in 0..self.words {
            self.x[base + w] = 0;
            self.z[base + w] = 0;
        }
        self.z[base + (qubit >> 6)] |= 1 << (qubit & 63);
        self.phase[removed] = 2 * value;
        Ok(MeasOutcome { value, deterministic: false })
    }

    fn stab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>, u8) {
        let (xs, zs) = self.row_sets(self.n + index);
        (xs, zs, self.phase[self.n + index])
    }

    fn destab_row(&self, index: usize) -> (BTreeSet<usize>, BTreeSet<usize>) {
        self.row_sets(index)
    }

    fn destabs_anticommuting_with(&self, op_x: &BTreeSet<usize>, op_z: &BTreeSet<usize>) -> Vec<usize> {
        let mut xmask = vec![0u64; self.words];
        let mut zmask = vec![0u64; self.words];
        for &q in op_x {
            xmask[q >> 6] |= 1 << (q & 63);
        }
        for &q in op_z {
            zmask[q >> 6] |= 1 << (q & 63);
        }
        (0..self.n)
            .filter(|row| {
                let base = row * self.words;
                let mut par = 0;
                for w in 0..self.words {
                    par ^= (self.x[base + w] & zmask[w]).count_ones() & 1;
                    par ^= (self.z[base + w] & xmask[w]).count_ones() & 1;
                }
                par == 1
            })
            .collect()
    }
}

/// Convenience constructor mirroring the simulator-agnostic API.
pub fn dense_init(n: usize) -> DenseTableau {
    DenseTableau::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{pairs, qubits, QuantumCircuit};
    use crate::gates::ONE_QUBIT_GATES;
    use crate::pauli::Pauli;
    use crate::sim::CanonicalTableau;

    #[test]
    fn fresh_state_measures_zero() {
        let mut sim = DenseTableau::new(3);
        for q in 0..3 {
            let m = sim.measure_z(q, None).unwrap();
            assert_eq!((m.value, m.deterministic), (0, true));
        }
        sim.validate().unwrap();
    }

    #[test]
    fn x_then_measure() {
        let mut sim = DenseTableau::new(4);
        sim.run_gate("X", &qubits([0, 1]), None).unwrap();
        let out = sim.run_gate("measure Z", &qubits([0, 1, 3]), None).unwrap();
        assert_eq!(out, [(0, 1), (1, 1), (3, 0)].into_iter().collect());
        sim.validate().unwrap();
    }

    #[test]
    fn bell_state_stabilizers() {
        let mut sim = DenseTableau::new(2);
        sim.run_gate("H", &qubits([0]), None).unwrap();
        sim.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        let (stabs, _) = sim.stab_strings();
        assert_eq!(stabs, vec!["  XX", "  ZZ"]);
        sim.validate().unwrap();
        // Forced measurement collapses deterministically.
        let m = sim.measure_z(0, Some(1)).unwrap();
        assert!(!m.deterministic);
        assert_eq!(m.value, 1);
        let m = sim.measure_z(1, None).unwrap();
        assert_eq!((m.value, m.deterministic), (1, true));
    }

    #[test]
    fn golden_three_qubit_tableau() {
        let mut sim = DenseTableau::new(3);
        sim.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        sim.run_gate("X", &qubits([0]), None).unwrap();
        let (stabs, destabs) = sim.stab_strings();
        assert_eq!(stabs, vec![" -ZII", " -ZZI", "  IIZ"]);
        assert_eq!(destabs, vec!["  XXI", "  IXI", "  IIX"]);
    }

    #[test]
    fn logical_sign_golden() {
        let mut sim = DenseTableau::new(3);
        sim.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        sim.run_gate("X", &qubits([0]), None).unwrap();
        let mut op = QuantumCircuit::new();
        op.append("Z", qubits([0, 1])).unwrap();
        assert_eq!(sim.logical_sign(&op).unwrap(), 1);
        let mut op = QuantumCircuit::new();
        op.append("Z", qubits([2])).unwrap();
        assert_eq!(sim.logical_sign(&op).unwrap(), 0);
        let mut op = QuantumCircuit::new();
        op.append("X", qubits([0])).unwrap();
        assert_eq!(sim.logical_sign(&op), Err(SimError::NotStabilizer));
    }

    /// Exhaustive single-qubit certification: every catalog Clifford applied
    /// to every Pauli eigenstate must leave the stabilizer predicted by the
    /// catalog's conjugation image.
    #[test]
    fn all_cliffords_on_all_eigenstates() {
        use crate::pauli::SparsePauli;
        // (preparation gates, stabilizing Pauli, sign)
        let preparations: [(&[&str], Pauli, bool); 6] = [
            (&[], Pauli::Z, false),
            (&["X"], Pauli::Z, true),
            (&["H"], Pauli::X, false),
            (&["X", "H"], Pauli::X, true),
            (&["H", "S"], Pauli::Y, false),
            (&["X", "H", "S"], Pauli::Y, true),
        ];
        for (prep, pauli, minus) in preparations {
            for (sym, action) in ONE_QUBIT_GATES {
                let mut sim = DenseTableau::new(1);
                for g in prep {
                    sim.run_gate(g, &qubits([0]), None).unwrap();
                }
                sim.run_gate(sym, &qubits([0]), None).unwrap();
                // Expected stabilizer: the catalog image of the prepared one.
                let (px, pz) = pauli.bits();
                let e_in = (px && pz) as u8 + 2 * (minus as u8);
                let (ex, ez, ee) = action.apply(px, pz, e_in);
                let expected = SparsePauli {
                    xs: if ex { [0].into() } else { Default::default() },
                    zs: if ez { [0].into() } else { Default::default() },
                    phase_exp: ee,
                };
                let (xs, zs, e) = sim.stab_row(0);
                assert_eq!(
                    (xs, zs, e),
                    (expected.xs, expected.zs, expected.phase_exp),
                    "gate {sym} on {pauli:?} eigenstate (minus={minus})"
                );
                sim.validate().unwrap();
            }
        }
    }

    #[test]
    fn canonical_export() {
        let sim = DenseTableau::new(2);
        let canon = CanonicalTableau::from_simulator(&sim);
        assert_eq!(canon.rows, vec![(vec![], vec![0], 0), (vec![], vec![1], 0)]);
        let mut flipped = DenseTableau::new(1);
        flipped.run_gate("X", &qubits([0]), None).unwrap();
        let canon = CanonicalTableau::from_simulator(&flipped);
        assert_eq!(canon.rows, vec![(vec![], vec![0], 1)]);
        // Different generator presentations of the same state export equally.
        let mut a = DenseTableau::new(2);
        a.run_gate("H", &qubits([0]), None).unwrap();
        a.run_gate("CNOT", &pairs([(0, 1)]), None).unwrap();
        let mut b = DenseTableau::new(2);
        b.run_gate("H", &qubits([1]), None).unwrap();
        b.run_gate("CNOT", &pairs([(1, 0)]), None).unwrap();
        assert_eq!(CanonicalTableau::from_simulator(&a), CanonicalTableau::from_simulator(&b));
    }
}
