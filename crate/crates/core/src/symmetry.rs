//! Invariance checks for two-party structures under envariant unitary pairs,
//! identical local base rotations, independent local unitaries and party
//! exchange.
//!
//! "Invariant" is measured three ways on every verdict: state distance up to
//! global phase, Schmidt spectrum distance, and whether the structure class
//! changed. Only the latter two are asserted by [`out_in_suite`].

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, kron, Matrix};
use crate::rng::SeededRng;
use crate::states::{schmidt_by_index, spectrum_distance, PureState};
use crate::structure::{classify, structure_from_state, StructureClass};

/// Default tolerance for the asserted invariants.
pub const DEFAULT_TOL: f64 = 1e-8;

const UNITARY_TOL: f64 = 1e-10;

/// Local unitaries `U_A ⊗ U_B` acting on the two parties of a bipartite state.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitaryPair {
    pub u_a: Matrix<f64>,
    pub u_b: Matrix<f64>,
}

impl LocalUnitaryPair {
    pub fn new(u_a: Matrix<f64>, u_b: Matrix<f64>) -> Result<Self> {
        for (name, u) in [("U_A", &u_a), ("U_B", &u_b)] {
            if !u.is_unitary(UNITARY_TOL) {
                return Err(Error::arg(format!("{name} is not unitary")));
            }
        }
        Ok(LocalUnitaryPair { u_a, u_b })
    }

    pub fn apply(&self, psi: &PureState<f64>) -> Result<PureState<f64>> {
        psi.apply_local(0, &self.u_a)?.apply_local(1, &self.u_b)
    }

    /// `U_A ⊗ U_B` as one matrix.
    pub fn tensor(&self) -> Result<Matrix<f64>> {
        kron(&self.u_a, &self.u_b)
    }

    /// `‖(U_A⊗U_B)|ψ⟩ − |ψ⟩‖₂`.
    pub fn residual(&self, psi: &PureState<f64>) -> Result<f64> {
        Ok(psi.distance(&self.apply(psi)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryVerdict {
    pub operation: String,
    /// `min_φ ‖after − e^{iφ}·before‖₂`.
    pub state_distance: f64,
    /// `None` when the state is not two qubits and has no class.
    pub class_changed: Option<bool>,
    pub schmidt_distance: f64,
    pub branch_lengths_preserved: bool,
}

fn require_bipartite(psi: &PureState<f64>) -> Result<()> {
    if psi.space().len() != 2 {
        return Err(Error::arg(format!(
            "operation needs a bipartite state, got {} parties",
            psi.space().len()
        )));
    }
    Ok(())
}

fn spectrum(psi: &PureState<f64>) -> Result<Vec<f64>> {
    Ok(schmidt_by_index(psi, &[0])?.coefficients)
}

fn class_of(psi: &PureState<f64>) -> Result<Option<StructureClass>> {
    let qs = structure_from_state(psi)?;
    match classify(&qs) {
        Ok(c) => Ok(Some(c)),
        Err(Error::Argument(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn length_distance(a: &PureState<f64>, b: &PureState<f64>) -> Result<f64> {
    let la = structure_from_state(a)?.length_profile();
    let lb = structure_from_state(b)?.length_profile();
    let n = la.len().max(lb.len());
    let pad = |mut v: Vec<f64>| {
        // zero-pad at the front so the sorted order stays ascending
        let mut out = vec![0.0; n - v.len()];
        out.append(&mut v);
        out
    };
    let (la, lb) = (pad(la), pad(lb));
    Ok(la.iter().zip(&lb).fold(0.0, |m, (x, y)| f64::max(m, (x - y).abs())))
}

fn verdict(operation: &str, before: &PureState<f64>, after: &PureState<f64>) -> Result<SymmetryVerdict> {
    let schmidt_distance = spectrum_distance(&spectrum(before)?, &spectrum(after)?);
    let class_changed = match (class_of(before)?, class_of(after)?) {
        (Some(a), Some(b)) => Some(a != b),
        _ => None,
    };
    Ok(SymmetryVerdict {
        operation: operation.to_string(),
        state_distance: before.distance_up_to_phase(after),
        class_changed,
        schmidt_distance,
        branch_lengths_preserved: length_distance(before, after)? <= DEFAULT_TOL,
    })
}

/// `U_A = Σ e^{iφ_k}|a_k⟩⟨a_k|`, `U_B = Σ e^{−iφ_k}|b_k⟩⟨b_k|` in the Schmidt
/// bases, identity on the complement. `phases` has one entry per Schmidt
/// coefficient.
pub fn envariance_counterpart(psi: &PureState<f64>, phases: &[f64]) -> Result<LocalUnitaryPair> {
    require_bipartite(psi)?;
    let dec = schmidt_by_index(psi, &[0])?;
    if phases.len() != dec.rank() {
        return Err(Error::arg(format!(
            "{} phases for Schmidt rank {}",
            phases.len(),
            dec.rank()
        )));
    }
    let dims = psi.space().dims();
    let mut u_a = Matrix::identity(dims[0]);
    let mut u_b = Matrix::identity(dims[1]);
    for (k, &phi) in phases.iter().enumerate() {
        let ea = Complex64::from_polar(1.0, phi) - 1.0;
        let eb = Complex64::from_polar(1.0, -phi) - 1.0;
        u_a = u_a.add(&Matrix::outer(&dec.left_basis[k], &dec.left_basis[k]).scale(ea))?;
        u_b = u_b.add(&Matrix::outer(&dec.right_basis[k], &dec.right_basis[k]).scale(eb))?;
    }
    LocalUnitaryPair::new(u_a, u_b)
}

/// Applies the envariant pair for `phases` and reports the effect.
pub fn apply_envariance(psi: &PureState<f64>, phases: &[f64]) -> Result<(PureState<f64>, SymmetryVerdict)> {
    let pair = envariance_counterpart(psi, phases)?;
    let after = pair.apply(psi)?;
    let v = verdict("envariance", psi, &after)?;
    Ok((after, v))
}

/// The base rotation `|0⟩ → (|0⟩ + i|1⟩)/√2`, `|1⟩ → (|0⟩ − i|1⟩)/√2`.
pub fn flip_rotation() -> Matrix<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Matrix::new(
        2,
        2,
        vec![
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(0.0, s),
            Complex64::new(0.0, -s),
        ],
    )
    .expect("2x2")
}

/// Applies `u ⊗ u`, the same base rotation on both parties.
pub fn apply_local_rotation(psi: &PureState<f64>, u: &Matrix<f64>) -> Result<(PureState<f64>, SymmetryVerdict)> {
    require_bipartite(psi)?;
    if !u.is_unitary(UNITARY_TOL) {
        return Err(Error::arg("rotation is not unitary"));
    }
    let dims = psi.space().dims();
    if dims[0] != dims[1] || u.rows() != dims[0] {
        return Err(Error::arg(format!(
            "{}x{} rotation for party dimensions {:?}",
            u.rows(),
            u.cols(),
            dims
        )));
    }
    let after = psi.apply_local(0, u)?.apply_local(1, u)?;
    let v = verdict("rotation", psi, &after)?;
    Ok((after, v))
}

/// Applies independent local unitaries `U_A ⊗ U_B`.
pub fn apply_local_pair(psi: &PureState<f64>, pair: &LocalUnitaryPair) -> Result<(PureState<f64>, SymmetryVerdict)> {
    require_bipartite(psi)?;
    let after = pair.apply(psi)?;
    let v = verdict("local-pair", psi, &after)?;
    Ok((after, v))
}

/// Exchanges the states of the two parties (SWAP), keeping the labels.
pub fn apply_permutation(psi: &PureState<f64>) -> Result<(PureState<f64>, SymmetryVerdict)> {
    require_bipartite(psi)?;
    let dims = psi.space().dims();
    if dims[0] != dims[1] {
        return Err(Error::arg(format!("cannot exchange parties of dimensions {} and {}", dims[0], dims[1])));
    }
    let after = psi.permute_parties(&[1, 0])?.relabel(psi.space().clone())?;
    let v = verdict("swap", psi, &after)?;
    Ok((after, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryOp {
    Envariance,
    Rotation,
    LocalPair,
    Swap,
}

impl SymmetryOp {
    pub const ALL: [SymmetryOp; 4] = [
        SymmetryOp::Envariance,
        SymmetryOp::Rotation,
        SymmetryOp::LocalPair,
        SymmetryOp::Swap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryOp::Envariance => "envariance",
            SymmetryOp::Rotation => "rotation",
            SymmetryOp::LocalPair => "local-pair",
            SymmetryOp::Swap => "swap",
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SymmetryOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SymmetryOp::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::arg(format!("unknown symmetry operation {s}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Operations drawn from in each trial; empty means all applicable ones.
    pub ops: Vec<SymmetryOp>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 100, seed: 0, tol: DEFAULT_TOL, ops: Vec::new() }
    }
}

/// Worst-case figures over all trials of [`out_in_suite`].
#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub spectrum: Vec<f64>,
    pub applied: BTreeMap<String, usize>,
    pub worst_schmidt_distance: f64,
    pub worst_envariance_residual: f64,
    /// Over envariance and swap steps only; general rotations move weight
    /// between computational-basis branches.
    pub worst_branch_length_distance: f64,
    pub worst_state_distance: BTreeMap<String, f64>,
    pub swap_class_changes: usize,
    pub class_checked: bool,
    pub violations: Vec<String>,
    pub passed: bool,
}

const MAX_VIOLATIONS: usize = 20;

/// Runs `trials` random compositions of symmetry operations on `psi`, each
/// trial seeded by `(seed, trial index)`, and checks on every step that the
/// Schmidt spectrum is unchanged, that envariant pairs fix the state, and that
/// exchange preserves branch lengths and the structure class.
pub fn out_in_suite(psi: &PureState<f64>, config: &SuiteConfig) -> Result<SuiteSummary> {
    require_bipartite(psi)?;
    let dims = psi.space().dims();
    let equal = dims[0] == dims[1];
    let mut ops: Vec<SymmetryOp> = if config.ops.is_empty() {
        SymmetryOp::ALL.into_iter().filter(|o| equal || !matches!(o, SymmetryOp::Rotation | SymmetryOp::Swap)).collect()
    } else {
        config.ops.clone()
    };
    ops.sort_unstable();
    ops.dedup();
    if !equal {
        if let Some(o) = ops.iter().find(|o| matches!(o, SymmetryOp::Rotation | SymmetryOp::Swap)) {
            return Err(Error::arg(format!("{o} needs parties of equal dimension")));
        }
    }
    let reference = spectrum(psi)?;
    let base = SeededRng::new(config.seed);
    let mut s = SuiteSummary {
        trials: config.trials,
        seed: config.seed,
        tol: config.tol,
        spectrum: reference.clone(),
        applied: BTreeMap::new(),
        worst_schmidt_distance: 0.0,
        worst_envariance_residual: 0.0,
        worst_branch_length_distance: 0.0,
        worst_state_distance: BTreeMap::new(),
        swap_class_changes: 0,
        class_checked: false,
        violations: Vec::new(),
        passed: true,
    };
    let violate = |s: &mut SuiteSummary, msg: String| {
        s.passed = false;
        if s.violations.len() < MAX_VIOLATIONS {
            s.violations.push(msg);
        }
    };
    for trial in 0..config.trials {
        let mut rng = base.fork(trial as u64);
        let mut chosen: Vec<SymmetryOp> = ops.iter().copied().filter(|_| rng.coin()).collect();
        if chosen.is_empty() {
            chosen.push(ops[rng.below(ops.len())]);
        }
        let mut current = psi.clone();
        for op in chosen {
            let (after, v) = match op {
                SymmetryOp::Envariance => {
                    let rank = schmidt_by_index(&current, &[0])?.rank();
                    let phases: Vec<f64> = (0..rank).map(|_| rng.uniform() * std::f64::consts::TAU).collect();
                    let pair = envariance_counterpart(&current, &phases)?;
                    let residual = pair.residual(&current)?;
                    s.worst_envariance_residual = s.worst_envariance_residual.max(residual);
                    if residual > config.tol {
                        violate(&mut s, format!("trial {trial}: envariance residual {residual:e}"));
                    }
                    let after = pair.apply(&current)?;
                    let v = verdict(op.as_str(), &current, &after)?;
                    (after, v)
                }
                SymmetryOp::Rotation => {
                    let u = haar_unitary(dims[0], &mut rng)?;
                    apply_local_rotation(&current, &u)?
                }
                SymmetryOp::LocalPair => {
                    let pair = LocalUnitaryPair::new(haar_unitary(dims[0], &mut rng)?, haar_unitary(dims[1], &mut rng)?)?;
                    apply_local_pair(&current, &pair)?
                }
                SymmetryOp::Swap => {
                    let r = apply_permutation(&current)?;
                    if let Some(changed) = r.1.class_changed {
                        s.class_checked = true;
                        if changed {
                            s.swap_class_changes += 1;
                            violate(&mut s, format!("trial {trial}: exchange changed the structure class"));
                        }
                    }
                    r
                }
            };
            *s.applied.entry(op.to_string()).or_default() += 1;
            let worst = s.worst_state_distance.entry(op.to_string()).or_default();
            *worst = worst.max(v.state_distance);
            if matches!(op, SymmetryOp::Envariance | SymmetryOp::Swap) {
                let d = length_distance(&current, &after)?;
                s.worst_branch_length_distance = s.worst_branch_length_distance.max(d);
                if d > config.tol {
                    violate(&mut s, format!("trial {trial}: {op} moved branch lengths by {d:e}"));
                }
            }
            let drift = spectrum_distance(&reference, &spectrum(&after)?);
            s.worst_schmidt_distance = s.worst_schmidt_distance.max(drift);
            if drift > config.tol {
                violate(&mut s, format!("trial {trial}: {op} moved the Schmidt spectrum by {drift:e}"));
            }
            current = after;
        }
    }
    Ok(s)
}
