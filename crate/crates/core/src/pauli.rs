//! Pauli primitives shared across the simulators, the code verifier, and the
//! decoder: single-qubit Pauli labels, sparse n-qubit Pauli operators, and the
//! phase arithmetic of the XZ ("W") storage convention.
//!
//! Throughout the crate an n-qubit Pauli is kept in component form
//! `i^e * prod_q X_q^{x_q} Z_q^{z_q}`, with X written before Z on every qubit.
//! A qubit carrying both bits stores the product `W = XZ`; the usual `Y = iXZ`
//! is recovered by pairing each W with one factor of `i` from the exponent `e`.

use std::collections::BTreeSet;
use std::fmt;

/// Single-qubit Pauli label (identity excluded).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_str(self) -> &'static str {
        match self {
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        }
    }

    pub fn from_str(s: &str) -> Option<Pauli> {
        match s {
            "X" => Some(Pauli::X),
            "Y" => Some(Pauli::Y),
            "Z" => Some(Pauli::Z),
            _ => None,
        }
    }

    /// X/Z component bits of this Pauli in the XZ convention.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// True iff the two Paulis anticommute.
    pub fn anticommutes(self, other: Pauli) -> bool {
        self != other
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An n-qubit Pauli operator stored as the qubit sets carrying an X and a Z
/// factor, plus the exponent of `i` (mod 4) in front of the canonical
/// X-before-Z component form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparsePauli {
    pub xs: BTreeSet<usize>,
    pub zs: BTreeSet<usize>,
    /// Exponent of i (mod 4) multiplying the X-before-Z component product.
    pub phase_exp: u8,
}

impl SparsePauli {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(pauli: Pauli, qubit: usize) -> Self {
        let mut p = SparsePauli::identity();
        p.mul_single(pauli, qubit);
        p
    }

    pub fn is_identity(&self) -> bool {
        self.xs.is_empty() && self.zs.is_empty()
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.xs.union(&self.zs).count()
    }

    /// Right-multiply by a single-qubit Pauli, keeping canonical form.
    pub fn mul_single(&mut self, pauli: Pauli, qubit: usize) {
        let (x, z) = pauli.bits();
        if x && z {
            self.phase_exp = (self.phase_exp + 1) & 3; // Y = i XZ
        }
        if x {
            // The incoming X moves left past an existing Z on this qubit.
            if self.zs.contains(&qubit) {
                self.phase_exp = (self.phase_exp + 2) & 3;
            }
            toggle(&mut self.xs, qubit);
        }
        if z {
            toggle(&mut self.zs, qubit);
        }
    }

    /// Right-multiply by another sparse Pauli: `self <- self * other`.
    pub fn mul(&mut self, other: &SparsePauli) {
        // Each X of `other` moves left past the Zs already accumulated.
        let mut reorder = 0usize;
        for q in &other.xs {
            if self.zs.contains(q) {
                reorder += 1;
            }
        }
        self.phase_exp = (self.phase_exp + other.phase_exp + 2 * (reorder as u8 & 1)) & 3;
        for q in &other.xs {
            toggle(&mut self.xs, *q);
        }
        for q in &other.zs {
            toggle(&mut self.zs, *q);
        }
    }

    /// True iff the two operators anticommute.
    pub fn anticommutes_with(&self, other: &SparsePauli) -> bool {
        let mut overlap = self.xs.intersection(&other.zs).count();
        overlap += self.zs.intersection(&other.xs).count();
        overlap % 2 == 1
    }

    /// The Pauli label on `qubit`, if any, after folding W into Y.
    pub fn pauli_on(&self, qubit: usize) -> Option<Pauli> {
        match (self.xs.contains(&qubit), self.zs.contains(&qubit)) {
            (true, true) => Some(Pauli::Y),
            (true, false) => Some(Pauli::X),
            (false, true) => Some(Pauli::Z),
            (false, false) => None,
        }
    }

    /// Overall sign (0 for +, 1 for -) once each W is rewritten as Y.
    ///
    /// Only meaningful for Hermitian operators, where the residual phase is
    /// guaranteed to be real.
    pub fn y_folded_sign(&self) -> u8 {
        let w = self.xs.intersection(&self.zs).count() as u8;
        let e = (self.phase_exp + 4 - (w & 3)) & 3;
        debug_assert!(e % 2 == 0, "non-Hermitian Pauli has no real sign");
        e / 2
    }
}

fn toggle(set: &mut BTreeSet<usize>, q: usize) {
    if !set.remove(&q) {
        set.insert(q);
    }
}

/// Render one generator row as a sign prefix plus one letter per qubit.
///
/// `phase_exp` is interpreted as in [`SparsePauli`]; when `signed` is false
/// the prefix is left blank (used for destabilizer rows, whose phases are not
/// tracked).
pub fn render_row(n: usize, xs: &BTreeSet<usize>, zs: &BTreeSet<usize>, phase_exp: u8, signed: bool) -> String {
    let w = xs.intersection(zs).count() as u8;
    let prefix = if signed {
        match (phase_exp + 4 - (w & 3)) & 3 {
            0 => "  ",
            1 => " i",
            2 => " -",
            _ => "-i",
        }
    } else {
        "  "
    };
    let mut s = String::with_capacity(n + 2);
    s.push_str(prefix);
    for q in 0..n {
        s.push(match (xs.contains(&q), zs.contains(&q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        });
    }
    s
}

/// Parse a row produced by [`render_row`] back into sets and a phase.
pub fn parse_row(row: &str) -> Option<(BTreeSet<usize>, BTreeSet<usize>, u8)> {
    let (prefix, body) = row.split_at(2.min(row.len()));
    let folded: u8 = match prefix {
        "  " => 0,
        " i" => 1,
        " -" => 2,
        "-i" => 3,
        _ => return None,
    };
    let mut xs = BTreeSet::new();
    let mut zs = BTreeSet::new();
    let mut w = 0u8;
    for (q, c) in body.chars().enumerate() {
        match c {
            'I' => {}
            'X' => {
                xs.insert(q);
            }
            'Z' => {
                zs.insert(q);
            }
            'Y' => {
                xs.insert(q);
                zs.insert(q);
                w = (w + 1) & 3;
            }
            _ => return None,
        }
    }
    Some((xs, zs, (folded + w) & 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_qubit_products() {
        // Z*X = iY = i^2 XZ in canonical component form.
        let mut p = SparsePauli::single(Pauli::Z, 0);
        p.mul_single(Pauli::X, 0);
        assert_eq!(p.phase_exp, 2);
        assert_eq!(p.pauli_on(0), Some(Pauli::Y));
        // Y*Y = I
        let mut y = SparsePauli::single(Pauli::Y, 3);
        let y2 = y.clone();
        y.mul(&y2);
        assert!(y.is_identity());
        assert_eq!(y.phase_exp, 0);
        // X*Y = iZ
        let mut p = SparsePauli::single(Pauli::X, 1);
        p.mul(&SparsePauli::single(Pauli::Y, 1));
        assert_eq!(p.pauli_on(1), Some(Pauli::Z));
        assert_eq!(p.phase_exp, 1);
    }

    #[test]
    fn anticommutation() {
        let x0 = SparsePauli::single(Pauli::X, 0);
        let z0 = SparsePauli::single(Pauli::Z, 0);
        let z1 = SparsePauli::single(Pauli::Z, 1);
        assert!(x0.anticommutes_with(&z0));
        assert!(!x0.anticommutes_with(&z1));
        let mut xx = SparsePauli::single(Pauli::X, 0);
        xx.mul_single(Pauli::X, 1);
        let mut zz = SparsePauli::single(Pauli::Z, 0);
        zz.mul_single(Pauli::Z, 1);
        assert!(!xx.anticommutes_with(&zz));
    }

    #[test]
    fn render_and_parse_rows() {
        let mut p = SparsePauli::single(Pauli::Y, 1);
        p.mul_single(Pauli::Z, 2);
        let row = render_row(3, &p.xs, &p.zs, p.phase_exp, true);
        assert_eq!(row, "  IYZ");
        let (xs, zs, e) = parse_row(&row).unwrap();
        assert_eq!((xs, zs, e), (p.xs.clone(), p.zs.clone(), p.phase_exp));
        // A -1 phase on a plain Z row.
        let row = render_row(2, &BTreeSet::new(), &[0usize].into_iter().collect(), 2, true);
        assert_eq!(row, " -ZI");
    }
}
