//! Diagrammatic representation of an entangled state: one node per local
//! basis state of each party, one branch per nonzero product-basis term.
//! A branch's length is the amplitude magnitude; its orientation is the
//! phase relative to the reference branch, drawn as a rotation of `−φ`
//! anticlockwise (so a relative phase of `−i` reads as 90°).

mod class;
mod family;

pub use class::{classify, enumerate_qubit_classes, ClassEntry, ClassPairing, QubitClassTable, StructureClass};
pub use family::{family_state, Pairing, TwoQubitFamily};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{MultipartiteSpace, Party, PureState};

/// Amplitudes with magnitude at or below this are not branches.
pub const BRANCH_THRESHOLD: f64 = 1e-12;

/// Maps an angle in degrees into `[0, 360)`.
pub fn normalize_degrees(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r >= 360.0 {
        0.0
    } else {
        r + 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    /// Basis index of each party on this branch.
    pub nodes: Vec<usize>,
    pub length: f64,
    /// Degrees in `[0, 360)`, relative to the reference branch.
    pub orientation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub party: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure")]
pub struct QuantumStructure {
    parties: Vec<Party>,
    nodes: Vec<Node>,
    branches: Vec<Branch>,
    reference_branch: usize,
}

#[derive(Deserialize)]
struct RawStructure {
    parties: Vec<Party>,
    branches: Vec<Branch>,
    reference_branch: usize,
}

impl TryFrom<RawStructure> for QuantumStructure {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        QuantumStructure::new(raw.parties, raw.branches, raw.reference_branch)
    }
}

impl QuantumStructure {
    pub fn new(parties: Vec<Party>, branches: Vec<Branch>, reference_branch: usize) -> Result<Self> {
        let space = MultipartiteSpace::new(parties.iter().map(|p| (p.label.clone(), p.dim)))
            .map_err(|e| Error::Structure(e.to_string()))?;
        let bad = |msg: String| Err(Error::Structure(msg));
        if branches.is_empty() {
            return bad("a structure needs at least one branch".into());
        }
        let mut total = 0.0;
        for (k, b) in branches.iter().enumerate() {
            if let Err(e) = space.basis_index(&b.nodes) {
                return bad(format!("branch {k}: {e}"));
            }
            if !(b.length > 0.0 && b.length <= 1.0 + 1e-12) {
                return bad(format!("branch {k} length {} outside (0, 1]", b.length));
            }
            if !(b.orientation >= 0.0 && b.orientation < 360.0) {
                return bad(format!("branch {k} orientation {} outside [0, 360)", b.orientation));
            }
            if branches[..k].iter().any(|o| o.nodes == b.nodes) {
                return bad(format!("branch {k} repeats the node tuple {:?}", b.nodes));
            }
            total += b.length * b.length;
        }
        if (total - 1.0).abs() > 1e-10 {
            return bad(format!("squared branch lengths sum to {total}, not 1"));
        }
        match branches.get(reference_branch) {
            Some(b) if b.orientation == 0.0 => {}
            Some(_) => return bad("reference branch must have orientation 0".into()),
            None => return bad(format!("reference branch {reference_branch} does not exist")),
        }
        let nodes = parties
            .iter()
            .enumerate()
            .flat_map(|(party, p)| (0..p.dim).map(move |index| Node { party, index }))
            .collect();
        Ok(QuantumStructure { parties, nodes, branches, reference_branch })
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    /// Every node, one per local basis state of each party.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Nodes touched by at least one branch, in party then index order.
    pub fn occupied_nodes(&self) -> Vec<Node> {
        self.nodes
            .iter()
            .copied()
            .filter(|n| self.branches.iter().any(|b| b.nodes[n.party] == n.index))
            .collect()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn reference_branch(&self) -> usize {
        self.reference_branch
    }

    pub fn space(&self) -> MultipartiteSpace {
        MultipartiteSpace::new(self.parties.iter().map(|p| (p.label.clone(), p.dim)))
            .expect("validated at construction")
    }

    /// Branch lengths sorted ascending.
    pub fn length_profile(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.branches.iter().map(|b| b.length).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("structure serializes")
    }
}

/// Reads a state off as a structure. The lexicographically first branch is
/// the reference at orientation 0.
pub fn structure_from_state(psi: &PureState<f64>) -> Result<QuantumStructure> {
    let space = psi.space();
    let terms: Vec<(usize, Complex64)> = psi
        .amplitudes()
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, a)| a.norm() > BRANCH_THRESHOLD)
        .collect();
    let Some(&(_, reference)) = terms.first() else {
        return Err(Error::arg("zero vector has no branches"));
    };
    let branches = terms
        .iter()
        .map(|&(idx, a)| Branch {
            nodes: space.digits(idx),
            length: a.norm(),
            orientation: normalize_degrees(-(a / reference).arg().to_degrees()),
        })
        .collect();
    QuantumStructure::new(space.parties().to_vec(), branches, 0)
}

/// Rebuilds the state: branch amplitude `length·e^{−i·orientation}`.
pub fn state_from_structure(qs: &QuantumStructure) -> Result<PureState<f64>> {
    let space = qs.space();
    let mut amps = vec![Complex64::new(0.0, 0.0); space.total_dim()];
    for b in qs.branches() {
        let idx = space.basis_index(&b.nodes)?;
        amps[idx] = Complex64::from_polar(b.length, -b.orientation.to_radians());
    }
    PureState::new(space, amps).map_err(|e| Error::Structure(e.to_string()))
}
