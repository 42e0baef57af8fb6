//! Canonical gate catalog: every standard gate symbol mapped to its Clifford
//! conjugation action, shared by both simulators.
//!
//! One-qubit actions are stored as the signed images of X and Z. An image with
//! both component bits set represents `W = XZ` together with one implicit
//! factor of `i` (so `+Y` is stored as `sign = +` with both bits set). This is
//! exactly the storage convention of the sparse simulator, which keeps the `i`
//! count in a separate phase set.

use crate::pauli::Pauli;
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GateError {
    #[error("unknown gate symbol '{0}'")]
    UnknownSymbol(String),
    #[error("gate arity mismatch in composition")]
    ArityMismatch,
}

/// Signed image of a single-qubit Pauli under conjugation.
///
/// The represented operator is `sign * i^(x & z) * X^x Z^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliImage {
    pub x: bool,
    pub z: bool,
    pub minus: bool,
}

impl PauliImage {
    pub const fn new(x: bool, z: bool, minus: bool) -> Self {
        Self { x, z, minus }
    }

    pub fn from_signed_pauli(p: Pauli, minus: bool) -> Self {
        let (x, z) = p.bits();
        Self { x, z, minus }
    }

    /// Exponent of i (mod 4) in canonical component form.
    pub fn phase_exp(&self) -> u8 {
        (self.x && self.z) as u8 + 2 * self.minus as u8
    }

    fn from_component(x: bool, z: bool, phase_exp: u8) -> Self {
        let w = (x && z) as u8;
        let e = (phase_exp + 4 - w) & 3;
        debug_assert!(e % 2 == 0, "image phase must be real after folding W");
        Self { x, z, minus: e == 2 }
    }
}

/// Conjugation action of a one-qubit Clifford: images of X and Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OneQubitAction {
    pub image_x: PauliImage,
    pub image_z: PauliImage,
}

/// Image of a two-qubit Pauli generator: component bit masks over the two
/// qubits plus the i exponent of the canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoQubitImage {
    pub xs: u8,
    pub zs: u8,
    pub phase_exp: u8,
}

/// Conjugation action of a two-qubit Clifford: images of XI, IX, ZI, IZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoQubitAction {
    pub image_xi: TwoQubitImage,
    pub image_ix: TwoQubitImage,
    pub image_zi: TwoQubitImage,
    pub image_iz: TwoQubitImage,
}

/// A catalog entry: what a gate symbol does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordSpec {
    OneQubit(OneQubitAction),
    TwoQubit(TwoQubitAction),
    /// (Re)initialization into a Pauli-basis eigenstate.
    Init { basis: Pauli, plus: bool },
    Measure { basis: Pauli },
}

impl CliffordSpec {
    pub fn arity(&self) -> usize {
        match self {
            CliffordSpec::TwoQubit(_) => 2,
            _ => 1,
        }
    }
}

/// Either side of a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordAction {
    One(OneQubitAction),
    Two(TwoQubitAction),
}

// Single-qubit component algebra: (x, z, e) with operator i^e X^x Z^z.
fn mul1(a: (bool, bool, u8), b: (bool, bool, u8)) -> (bool, bool, u8) {
    let reorder = (a.1 && b.0) as u8 * 2;
    (a.0 ^ b.0, a.1 ^ b.1, (a.2 + b.2 + reorder) & 3)
}

impl OneQubitAction {
    /// Push a single-qubit component `i^e X^x Z^z` through this action.
    pub fn apply(&self, x: bool, z: bool, e: u8) -> (bool, bool, u8) {
        let ix = self.image_x;
        let iz = self.image_z;
        let mut acc = (false, false, e);
        if x {
            acc = mul1(acc, (ix.x, ix.z, ix.phase_exp()));
        }
        if z {
            acc = mul1(acc, (iz.x, iz.z, iz.phase_exp()));
        }
        acc
    }

    /// Apply `self` then `other`.
    pub fn compose(&self, other: &OneQubitAction) -> OneQubitAction {
        let push = |img: PauliImage| {
            let (x, z, e) = other.apply(img.x, img.z, img.phase_exp());
            PauliImage::from_component(x, z, e)
        };
        OneQubitAction {
            image_x: push(self.image_x),
            image_z: push(self.image_z),
        }
    }

    /// The images of anticommuting generators must anticommute.
    pub fn is_symplectic(&self) -> bool {
        let a = self.image_x;
        let b = self.image_z;
        ((a.x && b.z) as u8 + (a.z && b.x) as u8) % 2 == 1
    }
}

fn mul2(a: TwoQubitImage, b: TwoQubitImage) -> TwoQubitImage {
    let reorder = ((a.zs & b.xs).count_ones() as u8 & 1) * 2;
    TwoQubitImage {
        xs: a.xs ^ b.xs,
        zs: a.zs ^ b.zs,
        phase_exp: (a.phase_exp + b.phase_exp + reorder) & 3,
    }
}

impl TwoQubitAction {
    /// Push a two-qubit component through this action. Bit 0 of the masks is
    /// the first qubit of the gate, bit 1 the second.
    pub fn apply(&self, xs: u8, zs: u8, e: u8) -> TwoQubitImage {
        let mut acc = TwoQubitImage { xs: 0, zs: 0, phase_exp: e };
        // Expand in canonical order X0, Z0, X1, Z1.
        if xs & 1 != 0 {
            acc = mul2(acc, self.image_xi);
        }
        if zs & 1 != 0 {
            acc = mul2(acc, self.image_zi);
        }
        if xs & 2 != 0 {
            acc = mul2(acc, self.image_ix);
        }
        if zs & 2 != 0 {
            acc = mul2(acc, self.image_iz);
        }
        acc
    }

    pub fn compose(&self, other: &TwoQubitAction) -> TwoQubitAction {
        let push = |img: TwoQubitImage| other.apply(img.xs, img.zs, img.phase_exp);
        TwoQubitAction {
            image_xi: push(self.image_xi),
            image_ix: push(self.image_ix),
            image_zi: push(self.image_zi),
            image_iz: push(self.image_iz),
        }
    }
}

/// Compose two actions of equal arity: apply `a`, then `b`.
pub fn compose(a: &CliffordAction, b: &CliffordAction) -> Result<CliffordAction, GateError> {
    match (a, b) {
        (CliffordAction::One(a), CliffordAction::One(b)) => Ok(CliffordAction::One(a.compose(b))),
        (CliffordAction::Two(a), CliffordAction::Two(b)) => Ok(CliffordAction::Two(a.compose(b))),
        _ => Err(GateError::ArityMismatch),
    }
}

const fn img(p: char, minus: bool) -> PauliImage {
    match p {
        'X' => PauliImage::new(true, false, minus),
        'Y' => PauliImage::new(true, true, minus),
        'Z' => PauliImage::new(false, true, minus),
        _ => panic!("bad image"),
    }
}

const fn act1(ix: PauliImage, iz: PauliImage) -> OneQubitAction {
    OneQubitAction { image_x: ix, image_z: iz }
}

/// The twenty-four one-qubit Cliffords, keyed by primary symbol.
pub const ONE_QUBIT_GATES: [(&str, OneQubitAction); 24] = [
    ("I", act1(img('X', false), img('Z', false))),
    ("X", act1(img('X', false), img('Z', true))),
    ("Y", act1(img('X', true), img('Z', true))),
    ("Z", act1(img('X', true), img('Z', false))),
    ("Q", act1(img('X', false), img('Y', true))),
    ("R", act1(img('Z', true), img('X', false))),
    ("S", act1(img('Y', false), img('Z', false))),
    ("Qd", act1(img('X', false), img('Y', false))),
    ("Rd", act1(img('Z', false), img('X', true))),
    ("Sd", act1(img('Y', true), img('Z', false))),
    ("H", act1(img('Z', false), img('X', false))),
    ("H2", act1(img('Z', true), img('X', true))),
    ("H3", act1(img('Y', false), img('Z', true))),
    ("H4", act1(img('Y', true), img('Z', true))),
    ("H5", act1(img('X', true), img('Y', false))),
    ("H6", act1(img('X', true), img('Y', true))),
    ("F1", act1(img('Y', false), img('X', false))),
    ("F2", act1(img('Z', true), img('Y', false))),
    ("F3", act1(img('Y', false), img('X', true))),
    ("F4", act1(img('Z', false), img('Y', true))),
    ("F1d", act1(img('Z', false), img('Y', false))),
    ("F2d", act1(img('Y', true), img('X', true))),
    ("F3d", act1(img('Z', true), img('Y', true))),
    ("F4d", act1(img('Y', true), img('X', false))),
];

const ALIASES: [(&str, &str); 12] = [
    ("H1", "H"),
    ("H+z+x", "H"),
    ("H-z-x", "H2"),
    ("H+y-z", "H3"),
    ("H-y-z", "H4"),
    ("H-x+y", "H5"),
    ("H-x-y", "H6"),
    ("P", "S"),
    ("Pd", "Sd"),
    ("CX", "CNOT"),
    ("NOT", "X"),
    ("measure |0>", "measure Z"),
];

const fn img2(xs: u8, zs: u8) -> TwoQubitImage {
    TwoQubitImage { xs, zs, phase_exp: 0 }
}

pub const CNOT_ACTION: TwoQubitAction = TwoQubitAction {
    image_xi: img2(0b11, 0b00),
    image_ix: img2(0b10, 0b00),
    image_zi: img2(0b00, 0b01),
    image_iz: img2(0b00, 0b11),
};

pub const CZ_ACTION: TwoQubitAction = TwoQubitAction {
    image_xi: img2(0b01, 0b10),
    image_ix: img2(0b10, 0b01),
    image_zi: img2(0b00, 0b01),
    image_iz: img2(0b00, 0b10),
};

pub const SWAP_ACTION: TwoQubitAction = TwoQubitAction {
    image_xi: img2(0b10, 0b00),
    image_ix: img2(0b01, 0b00),
    image_zi: img2(0b00, 0b10),
    image_iz: img2(0b00, 0b01),
};

fn catalog() -> &'static HashMap<&'static str, CliffordSpec> {
    static CATALOG: OnceLock<HashMap<&'static str, CliffordSpec>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut map = HashMap::new();
        for (sym, action) in ONE_QUBIT_GATES {
            map.insert(sym, CliffordSpec::OneQubit(action));
        }
        map.insert("CNOT", CliffordSpec::TwoQubit(CNOT_ACTION));
        map.insert("CZ", CliffordSpec::TwoQubit(CZ_ACTION));
        map.insert("SWAP", CliffordSpec::TwoQubit(SWAP_ACTION));
        for (basis, plus, sym) in [
            (Pauli::X, true, "init |+>"),
            (Pauli::X, false, "init |->"),
            (Pauli::Y, true, "init |+i>"),
            (Pauli::Y, false, "init |-i>"),
            (Pauli::Z, true, "init |0>"),
            (Pauli::Z, false, "init |1>"),
        ] {
            map.insert(sym, CliffordSpec::Init { basis, plus });
        }
        map.insert("measure X", CliffordSpec::Measure { basis: Pauli::X });
        map.insert("measure Y", CliffordSpec::Measure { basis: Pauli::Y });
        map.insert("measure Z", CliffordSpec::Measure { basis: Pauli::Z });
        for (alias, target) in ALIASES {
            let spec = map[target];
            map.insert(alias, spec);
        }
        map
    })
}

/// Look a gate symbol up in the catalog.
pub fn lookup(symbol: &str) -> Result<CliffordSpec, GateError> {
    catalog()
        .get(symbol)
        .copied()
        .ok_or_else(|| GateError::UnknownSymbol(symbol.to_string()))
}

/// The action of a one-qubit catalog symbol.
pub fn one_qubit_action(symbol: &str) -> Result<OneQubitAction, GateError> {
    match lookup(symbol)? {
        CliffordSpec::OneQubit(a) => Ok(a),
        _ => Err(GateError::ArityMismatch),
    }
}

/// Basis-change pair for measuring in a Pauli basis: apply `.0`, measure Z,
/// apply `.1`. For Z the pair is empty.
pub fn basis_change(basis: Pauli) -> (&'static [&'static str], &'static [&'static str]) {
    match basis {
        Pauli::Z => (&[], &[]),
        Pauli::X => (&["H"], &["H"]),
        // F1 sends Y to Z; F1d undoes it.
        Pauli::Y => (&["F1"], &["F1d"]),
    }
}

/// The Pauli applied to flip an unwanted initialization outcome.
pub fn init_flip(basis: Pauli) -> &'static str {
    match basis {
        Pauli::Z => "X",
        Pauli::X => "Z",
        Pauli::Y => "X",
    }
}

/// Decomposition of a one-qubit Clifford action into H and S, found by
/// breadth-first search through the group; used by the dense simulator.
pub fn hs_decomposition_for(action: &OneQubitAction) -> &'static [&'static str] {
    static TABLE: OnceLock<HashMap<OneQubitAction, Vec<&'static str>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let h = one_qubit_action("H").unwrap();
        let s = one_qubit_action("S").unwrap();
        let identity = one_qubit_action("I").unwrap();
        let mut found: HashMap<OneQubitAction, Vec<&'static str>> = HashMap::new();
        found.insert(identity, Vec::new());
        let mut frontier = vec![identity];
        while let Some(current) = frontier.pop() {
            let path = found[&current].clone();
            for (sym, gen) in [("H", h), ("S", s)] {
                let next = current.compose(&gen);
                if !found.contains_key(&next) {
                    let mut p = path.clone();
                    p.push(sym);
                    found.insert(next, p);
                    frontier.push(next);
                }
            }
        }
        assert_eq!(found.len(), 24);
        found
    });
    table[action].as_slice()
}

/// Decomposition of a one-qubit catalog symbol into H and S.
pub fn hs_decomposition(symbol: &str) -> Result<&'static [&'static str], GateError> {
    Ok(hs_decomposition_for(&one_qubit_action(symbol)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn lookup_standard_symbols() {
        let h = one_qubit_action("H").unwrap();
        assert_eq!(h.image_x, img('Z', false));
        assert_eq!(h.image_z, img('X', false));
        assert_eq!(one_qubit_action("I").unwrap(), act1(img('X', false), img('Z', false)));
        let f1 = one_qubit_action("F1").unwrap();
        assert_eq!(f1.image_x, img('Y', false));
        assert_eq!(f1.image_z, img('X', false));
        assert!(lookup("T").is_err());
    }

    #[test]
    fn aliases_resolve_to_identical_specs() {
        for (alias, target) in [("H", "H1"), ("H", "H+z+x"), ("H2", "H-z-x"), ("H6", "H-x-y")] {
            assert_eq!(lookup(alias).unwrap(), lookup(target).unwrap());
        }
    }

    #[test]
    fn all_actions_symplectic_and_distinct() {
        let mut seen = HashSet::new();
        for (sym, action) in ONE_QUBIT_GATES {
            assert!(action.is_symplectic(), "{sym} images must anticommute");
            assert!(seen.insert(action), "{sym} duplicates another entry");
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn group_closure_under_compose() {
        let all: HashSet<OneQubitAction> = ONE_QUBIT_GATES.iter().map(|(_, a)| *a).collect();
        for (_, a) in ONE_QUBIT_GATES {
            for (_, b) in ONE_QUBIT_GATES {
                assert!(all.contains(&a.compose(&b)));
            }
        }
    }

    #[test]
    fn compose_identities() {
        let h = one_qubit_action("H").unwrap();
        let i = one_qubit_action("I").unwrap();
        assert_eq!(h.compose(&h), i);

        // S*S = Z, checked by multiplying the signed image tables.
        let s = one_qubit_action("S").unwrap();
        let z = one_qubit_action("Z").unwrap();
        assert_eq!(s.compose(&s), z);

        let f1 = one_qubit_action("F1").unwrap();
        let f1d = one_qubit_action("F1d").unwrap();
        assert_eq!(f1.compose(&f1d), i);
        // F1 cycles X -> Y -> Z -> X, so cubing it gives the identity.
        assert_eq!(f1.compose(&f1).compose(&f1), i);

        // Adjoint pairs compose to the identity.
        for (g, gd) in [("Q", "Qd"), ("R", "Rd"), ("S", "Sd"), ("F2", "F2d"), ("F3", "F3d"), ("F4", "F4d")] {
            let a = one_qubit_action(g).unwrap();
            let b = one_qubit_action(gd).unwrap();
            assert_eq!(a.compose(&b), i, "{g}*{gd} should be identity");
        }
    }

    #[test]
    fn compose_arity_mismatch() {
        let h = CliffordAction::One(one_qubit_action("H").unwrap());
        let cnot = CliffordAction::Two(CNOT_ACTION);
        assert_eq!(compose(&h, &cnot), Err(GateError::ArityMismatch));
    }

    #[test]
    fn basis_change_for_y_rotates_y_to_z() {
        let (pre, _post) = basis_change(Pauli::Y);
        let mut acc = one_qubit_action("I").unwrap();
        for sym in pre {
            acc = acc.compose(&one_qubit_action(sym).unwrap());
        }
        // Y = i XZ; acc must send it to +Z.
        let (x, z, e) = acc.apply(true, true, 1);
        assert_eq!((x, z, e), (false, true, 0));
    }

    #[test]
    fn hs_decompositions_match_catalog() {
        for (sym, action) in ONE_QUBIT_GATES {
            let seq = hs_decomposition(sym).unwrap();
            let mut acc = one_qubit_action("I").unwrap();
            for g in seq {
                acc = acc.compose(&one_qubit_action(g).unwrap());
            }
            assert_eq!(acc, action, "H/S sequence for {sym} rebuilds its action");
        }
    }

    #[test]
    fn two_qubit_actions() {
        // CNOT twice is the identity on all four generator images.
        let id = CNOT_ACTION.compose(&CNOT_ACTION);
        assert_eq!(id.image_xi, img2(0b01, 0b00));
        assert_eq!(id.image_ix, img2(0b10, 0b00));
        assert_eq!(id.image_zi, img2(0b00, 0b01));
        assert_eq!(id.image_iz, img2(0b00, 0b10));
        // X (x) X picks up no phase under CZ images' composition, but
        // conjugating X(x)X by CZ yields (XZ)(x)(ZX) = -(W(x)W) i^2-style
        // bookkeeping; the component push tracks that exactly.
        let out = CZ_ACTION.apply(0b11, 0b00, 0);
        assert_eq!((out.xs, out.zs), (0b11, 0b11));
        assert_eq!(out.phase_exp, 2);
    }
}
