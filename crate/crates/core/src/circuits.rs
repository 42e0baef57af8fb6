//! Tick-based quantum circuits and their logical-level analogs.
//!
//! A [`QuantumCircuit`] is an ordered sequence of ticks. Each tick maps gate
//! symbols to sets of gate locations and represents one parallel time step:
//! no qudit may be touched twice within a tick. Locations are either single
//! qudit indices or ordered tuples for multi-qudit gates.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("qudit {qudit} is acted on more than once in the tick")]
    Parallelism { qudit: usize },
    #[error("tick {tick} out of range (circuit has {len} ticks)")]
    TickOutOfRange { tick: usize, len: usize },
    #[error("invalid gate location: {0}")]
    InvalidLocation(String),
    #[error("circuit has no ticks")]
    Empty,
    #[error("logical_signs must be present iff logical_stabilizers is, with equal length")]
    LogicalSigns,
}

/// Scalar metadata attached to circuits or gates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Bool(true) => write!(f, "True"),
            ParamValue::Bool(false) => write!(f, "False"),
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Float(v) => write!(f, "{v:?}"),
            ParamValue::Str(v) => write!(f, "'{v}'"),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

fn fmt_params(params: &Params) -> String {
    let body: Vec<String> = params.iter().map(|(k, v)| format!("'{k}': {v}")).collect();
    format!("{{{}}}", body.join(", "))
}

/// A gate location: one qudit index, or an ordered tuple of distinct indices
/// for a multi-qudit gate (e.g. `(control, target)` for CNOT).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GateLocation {
    Qudit(usize),
    Tuple(Vec<usize>),
}

impl GateLocation {
    pub fn tuple(indices: Vec<usize>) -> Result<Self, CircuitError> {
        if indices.len() < 2 {
            return Err(CircuitError::InvalidLocation(format!(
                "tuple location needs at least two indices, got {indices:?}"
            )));
        }
        let unique: BTreeSet<_> = indices.iter().collect();
        if unique.len() != indices.len() {
            return Err(CircuitError::InvalidLocation(format!(
                "tuple location has repeated indices: {indices:?}"
            )));
        }
        Ok(GateLocation::Tuple(indices))
    }

    pub fn indices(&self) -> &[usize] {
        match self {
            GateLocation::Qudit(q) => std::slice::from_ref(q),
            GateLocation::Tuple(v) => v.as_slice(),
        }
    }

    fn validate(&self) -> Result<(), CircuitError> {
        if let GateLocation::Tuple(v) = self {
            GateLocation::tuple(v.clone())?;
        }
        Ok(())
    }
}

impl From<usize> for GateLocation {
    fn from(q: usize) -> Self {
        GateLocation::Qudit(q)
    }
}

impl From<(usize, usize)> for GateLocation {
    fn from((a, b): (usize, usize)) -> Self {
        GateLocation::Tuple(vec![a, b])
    }
}

impl fmt::Display for GateLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateLocation::Qudit(q) => write!(f, "{q}"),
            GateLocation::Tuple(v) => {
                let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

pub type LocationSet = BTreeSet<GateLocation>;

/// Build a location set of single-qudit indices.
pub fn qubits<I: IntoIterator<Item = usize>>(iter: I) -> LocationSet {
    iter.into_iter().map(GateLocation::Qudit).collect()
}

/// Build a location set of ordered pairs.
pub fn pairs<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> LocationSet {
    iter.into_iter().map(GateLocation::from).collect()
}

fn fmt_location_set(locations: &LocationSet) -> String {
    let parts: Vec<String> = locations.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// One parallel time step: gate symbols mapped to location sets, with
/// per-symbol params.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tick {
    pub gates: BTreeMap<String, LocationSet>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Params>,
}

impl Tick {
    /// All qudit indices used in this tick.
    pub fn active_qudits(&self) -> BTreeSet<usize> {
        self.gates
            .values()
            .flat_map(|locs| locs.iter().flat_map(|l| l.indices().iter().copied()))
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Merge locations into the tick, never removing existing ones. Existing
    /// param keys are kept; new keys are added.
    fn merge(&mut self, symbol: &str, locations: &LocationSet, params: &Params) -> Result<(), CircuitError> {
        if locations.is_empty() {
            return Ok(());
        }
        let mut occupied = self.active_qudits();
        let existing = self.gates.get(symbol);
        for loc in locations {
            loc.validate()?;
            if existing.is_some_and(|set| set.contains(loc)) {
                continue;
            }
            for &q in loc.indices() {
                if !occupied.insert(q) {
                    return Err(CircuitError::Parallelism { qudit: q });
                }
            }
        }
        self.gates.entry(symbol.to_string()).or_default().extend(locations.iter().cloned());
        if !params.is_empty() {
            let entry = self.params.entry(symbol.to_string()).or_default();
            for (k, v) in params {
                entry.entry(k.clone()).or_insert_with(|| v.clone());
            }
        }
        Ok(())
    }

    /// Remove the given locations from whichever symbol groups hold them.
    fn discard(&mut self, locations: &LocationSet) {
        for set in self.gates.values_mut() {
            for loc in locations {
                set.remove(loc);
            }
        }
        let emptied: Vec<String> = self
            .gates
            .iter()
            .filter(|(_, set)| set.is_empty())
            .map(|(sym, _)| sym.clone())
            .collect();
        for sym in emptied {
            self.gates.remove(&sym);
            self.params.remove(&sym);
        }
    }

    fn params_for(&self, symbol: &str) -> Params {
        self.params.get(symbol).cloned().unwrap_or_default()
    }
}

impl fmt::Display for Tick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .gates
            .iter()
            .map(|(sym, locs)| format!("'{sym}': {}", fmt_location_set(locs)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// An ordered sequence of ticks plus circuit-level metadata.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuantumCircuit {
    pub ticks: Vec<Tick>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: Params,
}

impl QuantumCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reserve `n` empty ticks up front; `update_at` can fill them later.
    pub fn with_ticks(n: usize) -> Self {
        QuantumCircuit { ticks: vec![Tick::default(); n], params: Params::new() }
    }

    pub fn with_params(params: Params) -> Self {
        QuantumCircuit { ticks: Vec::new(), params }
    }

    /// Number of ticks.
    pub fn len(&self) -> usize {
        self.ticks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ticks.is_empty()
    }

    /// Append one tick holding a single gate group.
    pub fn append(&mut self, symbol: &str, locations: LocationSet) -> Result<(), CircuitError> {
        self.append_params(symbol, locations, Params::new())
    }

    pub fn append_params(&mut self, symbol: &str, locations: LocationSet, params: Params) -> Result<(), CircuitError> {
        self.append_groups([(symbol.to_string(), locations)], params)
    }

    /// Append one tick holding several gate groups; `tick_params` is recorded
    /// against every gate symbol in the tick.
    pub fn append_groups<I>(&mut self, groups: I, tick_params: Params) -> Result<(), CircuitError>
    where
        I: IntoIterator<Item = (String, LocationSet)>,
    {
        let mut tick = Tick::default();
        for (symbol, locations) in groups {
            tick.merge(&symbol, &locations, &tick_params)?;
        }
        self.ticks.push(tick);
        Ok(())
    }

    /// Add gates to the last tick.
    pub fn update(&mut self, symbol: &str, locations: LocationSet) -> Result<(), CircuitError> {
        self.update_groups(None, [(symbol.to_string(), locations)], Params::new())
    }

    /// Add gates to the tick at `tick`.
    pub fn update_at(&mut self, tick: usize, symbol: &str, locations: LocationSet) -> Result<(), CircuitError> {
        self.update_groups(Some(tick), [(symbol.to_string(), locations)], Params::new())
    }

    /// Add gate groups to a tick (default: the last). Existing
    /// symbol-location pairs are never overwritten, only extended.
    pub fn update_groups<I>(&mut self, tick: Option<usize>, groups: I, params: Params) -> Result<(), CircuitError>
    where
        I: IntoIterator<Item = (String, LocationSet)>,
    {
        let len = self.ticks.len();
        let index = match tick {
            Some(t) => t,
            None => len.checked_sub(1).ok_or(CircuitError::Empty)?,
        };
        let slot = self.ticks.get_mut(index).ok_or(CircuitError::TickOutOfRange { tick: index, len })?;
        // Validate the whole group against a scratch copy first so a failed
        // update leaves the tick untouched.
        let mut scratch = slot.clone();
        for (symbol, locations) in groups {
            scratch.merge(&symbol, &locations, &params)?;
        }
        *slot = scratch;
        Ok(())
    }

    /// Remove locations from a tick (default: the last). Absent locations are
    /// ignored; emptied symbol groups are dropped.
    pub fn discard(&mut self, locations: &LocationSet) -> Result<(), CircuitError> {
        self.discard_at(None, locations)
    }

    pub fn discard_at(&mut self, tick: Option<usize>, locations: &LocationSet) -> Result<(), CircuitError> {
        let len = self.ticks.len();
        let index = match tick {
            Some(t) => t,
            None => len.checked_sub(1).ok_or(CircuitError::Empty)?,
        };
        let slot = self.ticks.get_mut(index).ok_or(CircuitError::TickOutOfRange { tick: index, len })?;
        slot.discard(locations);
        Ok(())
    }

    /// Iterate over `(tick index, symbol, locations, params)` in tick order.
    pub fn items(&self) -> impl Iterator<Item = (usize, &str, &LocationSet, Params)> + '_ {
        self.ticks.iter().enumerate().flat_map(|(t, tick)| {
            tick.gates
                .iter()
                .map(move |(sym, locs)| (t, sym.as_str(), locs, tick.params_for(sym)))
        })
    }

    /// Iterate over one tick's gate groups.
    pub fn items_at(&self, tick: usize) -> Result<impl Iterator<Item = (&str, &LocationSet, Params)> + '_, CircuitError> {
        let slot = self
            .ticks
            .get(tick)
            .ok_or(CircuitError::TickOutOfRange { tick, len: self.ticks.len() })?;
        Ok(slot.gates.iter().map(move |(sym, locs)| (sym.as_str(), locs, slot.params_for(sym))))
    }

    /// Per-tick sets of qudits acted on.
    pub fn active_qudits(&self) -> Vec<BTreeSet<usize>> {
        self.ticks.iter().map(Tick::active_qudits).collect()
    }

    /// Every qudit index appearing anywhere in the circuit.
    pub fn all_qudits(&self) -> BTreeSet<usize> {
        self.ticks.iter().flat_map(Tick::active_qudits).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, CircuitError> {
        let qc: QuantumCircuit =
            serde_json::from_str(text).map_err(|e| CircuitError::InvalidLocation(e.to_string()))?;
        for tick in &qc.ticks {
            let mut rebuilt = Tick::default();
            for (sym, locs) in &tick.gates {
                rebuilt.merge(sym, locs, &Params::new())?;
            }
        }
        Ok(qc)
    }

    fn has_any_params(&self) -> bool {
        !self.params.is_empty() || self.ticks.iter().any(|t| !t.params.is_empty())
    }
}

impl fmt::Display for QuantumCircuit {
    /// Canonical string form: symbols sorted within each tick, locations in
    /// ascending order. With params present, the extended form is used.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.has_any_params() {
            let ticks: Vec<String> = self.ticks.iter().map(|t| t.to_string()).collect();
            return write!(f, "QuantumCircuit([{}])", ticks.join(", "));
        }
        let ticks: Vec<String> = self
            .ticks
            .iter()
            .map(|tick| {
                let parts: Vec<String> = tick
                    .gates
                    .iter()
                    .map(|(sym, locs)| {
                        format!(
                            "'{sym}': loc: {} - params={}",
                            fmt_location_set(locs),
                            fmt_params(&tick.params_for(sym))
                        )
                    })
                    .collect();
                format!("{{{}}}", parts.join(", "))
            })
            .collect();
        write!(f, "QuantumCircuit(params={}, ticks=[{}])", fmt_params(&self.params), ticks.join(", "))
    }
}

/// One collection of circuits of a QEC protocol, e.g. a round of syndrome
/// extraction, together with the logical operators it begins and ends with.
#[derive(Debug, Clone)]
pub struct LogicalInstruction {
    pub symbol: String,
    pub circuit: QuantumCircuit,
    /// Logical operators per encoded qudit at the start of the instruction.
    pub initial_logical_ops: Vec<BTreeMap<String, QuantumCircuit>>,
    /// Logical operators per encoded qudit after the instruction.
    pub final_logical_ops: Vec<BTreeMap<String, QuantumCircuit>>,
    /// Symbols of logical operators that stabilize the encoded state, if the
    /// instruction encodes a stabilizer state.
    pub logical_stabilizers: Option<Vec<String>>,
    /// Signs (0 for +1, 1 for -1) matching `logical_stabilizers`.
    pub logical_signs: Option<Vec<u8>>,
    pub data_qudits: BTreeSet<usize>,
    pub ancilla_qudits: BTreeSet<usize>,
}

impl LogicalInstruction {
    pub fn validate(&self) -> Result<(), CircuitError> {
        match (&self.logical_stabilizers, &self.logical_signs) {
            (None, None) => Ok(()),
            (Some(s), Some(g)) if s.len() == g.len() => Ok(()),
            _ => Err(CircuitError::LogicalSigns),
        }
    }

    pub fn all_qudits(&self) -> BTreeSet<usize> {
        self.data_qudits.union(&self.ancilla_qudits).copied().collect()
    }
}

/// A logical gate: an ordered sequence of logical instructions plus gate
/// parameters affecting how the runner executes them.
#[derive(Debug, Clone)]
pub struct LogicalGate {
    pub symbol: String,
    pub instructions: Vec<Arc<LogicalInstruction>>,
    /// Skip error generation while running this gate.
    pub error_free: bool,
    /// Force every otherwise-random measurement outcome inside this gate.
    pub forced_outcome: Option<u8>,
}

impl LogicalGate {
    pub fn instr_symbols(&self) -> Vec<&str> {
        self.instructions.iter().map(|i| i.symbol.as_str()).collect()
    }
}

/// Logical analog of [`QuantumCircuit`]: each appended gate is one logical tick.
#[derive(Debug, Clone, Default)]
pub struct LogicalCircuit {
    pub gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, gate: LogicalGate) {
        self.gates.push(gate);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}
