use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::states::{MultipartiteSpace, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pairing {
    /// `|0⟩` pairs with `|0⟩`: `cos α|00⟩ + sin α e^{iθ}|11⟩`.
    Symmetric,
    /// `|0⟩` pairs with `|1⟩`: `cos α|01⟩ + sin α e^{iθ}|10⟩`.
    Asymmetric,
}

/// Two-qubit family member; angles in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitFamily {
    pub pairing: Pairing,
    pub alpha: f64,
    pub theta: f64,
}

impl TwoQubitFamily {
    pub fn new(pairing: Pairing, alpha: f64, theta: f64) -> Self {
        TwoQubitFamily { pairing, alpha, theta }
    }
}

/// Normalized member of the family on parties `A`, `B`.
pub fn family_state(f: &TwoQubitFamily) -> PureState<f64> {
    let space = MultipartiteSpace::new([("A", 2), ("B", 2)]).expect("two qubits");
    let (a, t) = (f.alpha.to_radians(), f.theta.to_radians());
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    let (first, second) = match f.pairing {
        Pairing::Symmetric => (0b00, 0b11),
        Pairing::Asymmetric => (0b01, 0b10),
    };
    amps[first] = Complex64::new(a.cos(), 0.0);
    amps[second] = Complex64::from_polar(a.sin(), t);
    PureState::normalized(space, amps).expect("cos² + sin² > 0")
}
