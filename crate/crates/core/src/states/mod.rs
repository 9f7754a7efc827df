//! The state model: labelled tensor-product spaces, pure states, density
//! operators, ensembles, purification, Schmidt decomposition, partition
//! models and role-based reduction.

mod density;
mod ensemble;
mod partition;
mod pure;
mod schmidt;
mod space;

pub use density::DensityOperator;
pub use ensemble::Ensemble;
pub use partition::{ModelKind, PartitionModel, Role};
pub use pure::{haar_random_state, PureState};
pub use schmidt::{schmidt, schmidt_by_index, spectrum_distance, SchmidtDecomposition, SCHMIDT_RANK_TOL};
pub use space::{MultipartiteSpace, Party};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Real, C};

/// Default `ε` for [`is_approx_pure`].
pub const DEFAULT_PURITY_EPS: f64 = 1e-6;

/// Eigenvalues at or below this are left out of the purification ancilla.
const PURIFY_RANK_TOL: f64 = 1e-12;

/// Label used for ancilla parties, made unique against the source space.
pub const ANCILLA_LABEL: &str = "anc";

/// Canonical purification `Σ_k √λ_k |k⟩|k_anc⟩` in the descending eigenbasis.
///
/// The ancilla dimension is the rank of `rho`. Each eigenvector has its first
/// nonzero component real and positive.
pub fn purify<T: Real>(rho: &DensityOperator<T>) -> Result<PureState<T>> {
    let eig = rho.eigen()?;
    let tol = T::tol(PURIFY_RANK_TOL);
    let kept: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&k| eig.eigenvalues[k] > tol)
        .collect();
    let rank = kept.len().max(1);
    let space = rho.space();
    let anc = MultipartiteSpace::new([(space.fresh_label(ANCILLA_LABEL), rank)])?;
    let joint = space.tensor(&anc)?;
    let d = space.total_dim();
    let mut amps = vec![C::<T>::zero(); d * rank];
    for (a, &k) in kept.iter().enumerate() {
        let w = eig.eigenvalues[k].sqrt();
        let v = eig.eigenvector(k);
        for i in 0..d {
            amps[i * rank + a] = v[i] * w;
        }
    }
    PureState::normalized(joint, amps)
}

/// `Σ_i p_i |ψ_i⟩⟨ψ_i|`.
pub fn mix<T: Real>(e: &Ensemble<T>) -> Result<DensityOperator<T>> {
    let d = e.space().total_dim();
    let mut m = Matrix::<T>::zeros(d, d);
    for (p, psi) in e.members() {
        let a = psi.amplitudes();
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = m[(i, j)] + a[i] * a[j].conj() * *p;
            }
        }
    }
    DensityOperator::new(e.space().clone(), m)
}

/// `Σ_i √p_i |ψ_i⟩|i_anc⟩`: a pure state whose ancilla trace equals [`mix`].
pub fn views_equivalent<T: Real>(e: &Ensemble<T>) -> Result<PureState<T>> {
    let space = e.space();
    let n = e.len();
    let anc = MultipartiteSpace::new([(space.fresh_label(ANCILLA_LABEL), n)])?;
    let joint = space.tensor(&anc)?;
    let d = space.total_dim();
    let mut amps = vec![C::<T>::zero(); d * n];
    for (i, (p, psi)) in e.members().iter().enumerate() {
        let w = p.sqrt();
        for (x, &a) in psi.amplitudes().iter().enumerate() {
            amps[x * n + i] = a * w;
        }
    }
    PureState::normalized(joint, amps)
}

/// Traces the last party (the ancilla of [`purify`]/[`views_equivalent`]).
pub fn trace_ancilla<T: Real>(psi: &PureState<T>) -> Result<DensityOperator<T>> {
    let n = psi.space().len();
    if n < 2 {
        return Err(Error::arg("state has no ancilla to trace"));
    }
    let keep: Vec<usize> = (0..n - 1).collect();
    let m = crate::linalg::partial_trace_pure(psi.amplitudes(), &psi.space().dims(), &keep)?;
    DensityOperator::new(psi.space().select(&keep)?, m)
}

/// Trace order for [`reduce`]: outer environment first, then the other
/// cluster, then inner environments.
const TRACE_ORDER: [Role; 6] = [Role::E0, Role::E2, Role::S2, Role::E1, Role::S1, Role::S];

/// Reduced state on the parties whose role is in `targets`.
///
/// The remaining parties are traced out one role at a time, outer environment
/// first, following the nested trace chains of the partition models.
pub fn reduce<T: Real>(
    rho: &DensityOperator<T>,
    model: &PartitionModel,
    targets: &[Role],
) -> Result<DensityOperator<T>> {
    model.check_covers(rho.space())?;
    if targets.is_empty() {
        return Err(Error::arg("target role set is empty"));
    }
    let present = model.roles_present();
    if let Some(r) = targets.iter().find(|r| !present.contains(r)) {
        return Err(Error::arg(format!("role {r} is not part of the {} model", model.kind())));
    }
    let mut current = rho.clone();
    for role in TRACE_ORDER {
        if targets.contains(&role) || !present.contains(&role) {
            continue;
        }
        current = current.trace_out(&model.parties_with(role))?;
    }
    Ok(current)
}

/// `tr(ρ²)`.
pub fn purity<T: Real>(rho: &DensityOperator<T>) -> T {
    rho.purity()
}

/// `purity(ρ) ≥ 1 − eps`: whether the system can be assigned one wave function.
pub fn is_approx_pure<T: Real>(rho: &DensityOperator<T>, eps: T) -> bool {
    rho.purity() >= T::one() - eps
}

/// Pure-state vector of an approximately pure `rho` (its top eigenvector),
/// or `None` when `purity < 1 − eps`. Never coerces a mixed state.
pub fn wave_function<T: Real>(rho: &DensityOperator<T>, eps: T) -> Result<Option<PureState<T>>> {
    if !is_approx_pure(rho, eps) {
        return Ok(None);
    }
    let eig = rho.eigen()?;
    PureState::normalized(rho.space().clone(), eig.eigenvector(0)).map(Some)
}
