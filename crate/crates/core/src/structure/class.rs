use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

use super::{family_state, structure_from_state, Pairing, QuantumStructure, TwoQubitFamily};

/// Quantization step for lengths and degrees when comparing classes.
const QUANTUM: f64 = 1e-9;
const FULL_TURN: i64 = 360_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassPairing {
    Symmetric,
    Asymmetric,
    Other,
}

/// Canonical form of a two-qubit structure modulo global rotation, mirror
/// reflection and party relabeling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructureClass {
    pub pairing: ClassPairing,
    weights: Vec<i64>,
    phases: Vec<i64>,
}

impl StructureClass {
    /// Sorted branch lengths, rounded to 1e−9.
    pub fn weights(&self) -> Vec<f64> {
        self.weights.iter().map(|&w| w as f64 * QUANTUM).collect()
    }

    /// Canonical orientation multiset in degrees, rounded to 1e−9.
    pub fn phases(&self) -> Vec<f64> {
        self.phases.iter().map(|&p| p as f64 * QUANTUM).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("class serializes")
    }
}

impl Serialize for StructureClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StructureClass", 3)?;
        st.serialize_field("pairing", &self.pairing)?;
        st.serialize_field("phases", &self.phases())?;
        st.serialize_field("weights", &self.weights())?;
        st.end()
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<f64>| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{:?} weights [{}] phases [{}]",
            self.pairing,
            join(self.weights()),
            join(self.phases())
        )
    }
}

fn quantize(x: f64) -> i64 {
    (x / QUANTUM).round() as i64
}

fn canonical_phases(orientations: &[f64]) -> Vec<i64> {
    let q: Vec<i64> = orientations.iter().map(|&o| quantize(o)).collect();
    let mut best: Option<Vec<i64>> = None;
    for &anchor in &q {
        for mirror in [false, true] {
            let mut cand: Vec<i64> = q
                .iter()
                .map(|&o| {
                    let d = if mirror { anchor - o } else { o - anchor };
                    d.rem_euclid(FULL_TURN)
                })
                .collect();
            cand.sort_unstable();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Structure class of a two-qubit structure.
pub fn classify(qs: &QuantumStructure) -> Result<StructureClass> {
    if qs.parties().len() != 2 || qs.parties().iter().any(|p| p.dim != 2) {
        return Err(Error::arg("classification is defined for two qubits only"));
    }
    let branches = qs.branches();
    let pairing = if branches.len() == 1 || branches.iter().all(|b| b.nodes[0] == b.nodes[1]) {
        ClassPairing::Symmetric
    } else if branches.iter().all(|b| b.nodes[0] != b.nodes[1]) {
        ClassPairing::Asymmetric
    } else {
        ClassPairing::Other
    };
    let mut weights: Vec<i64> = branches.iter().map(|b| quantize(b.length)).collect();
    weights.sort_unstable();
    let orientations: Vec<f64> = branches.iter().map(|b| b.orientation).collect();
    Ok(StructureClass { pairing, weights, phases: canonical_phases(&orientations) })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub class: StructureClass,
    pub members: Vec<TwoQubitFamily>,
}

/// Result of classifying the maximally entangled family members.
#[derive(Debug, Clone, Serialize)]
pub struct QubitClassTable {
    pub candidates: Vec<(TwoQubitFamily, StructureClass)>,
    pub classes: Vec<ClassEntry>,
    pub count: usize,
}

/// Classifies `{symmetric, asymmetric} × θ ∈ {0°, 90°, 180°, 270°}` at
/// `α = 45°` and merges members that fall into the same class.
pub fn enumerate_qubit_classes() -> QubitClassTable {
    let mut candidates = Vec::new();
    let mut classes: Vec<ClassEntry> = Vec::new();
    for pairing in [Pairing::Symmetric, Pairing::Asymmetric] {
        for theta in [0.0, 90.0, 180.0, 270.0] {
            let f = TwoQubitFamily::new(pairing, 45.0, theta);
            let qs = structure_from_state(&family_state(&f)).expect("nonzero state");
            let class = classify(&qs).expect("two qubits");
            match classes.iter_mut().find(|e| e.class == class) {
                Some(e) => e.members.push(f),
                None => classes.push(ClassEntry { class: class.clone(), members: vec![f] }),
            }
            candidates.push((f, class));
        }
    }
    let count = classes.len();
    QubitClassTable { candidates, classes, count }
}
