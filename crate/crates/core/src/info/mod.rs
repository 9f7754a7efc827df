//! Von Neumann entropy and the mutual-information family built on it.
//! All values are in bits.

mod demos;
mod multiworld;

pub use demos::{rabi_entanglement, rabi_state, slit_reduced, slit_state, slit_visibility};
pub use multiworld::{multiworld_mi, MutualInfoReport, Reductions, CASE4_TOL};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::EigenSystem;
use crate::scalar::Real;
use crate::states::{DensityOperator, PureState};

/// Eigenvalues in `[−NEG_EIG_TOL, 0)` are treated as zero.
pub const NEG_EIG_TOL: f64 = 1e-10;

/// `−Σ p log₂ p` over a probability vector, with `0·log 0 = 0`.
pub fn shannon_bits<T: Real>(p: &[T]) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .fold(T::zero(), |acc, &x| acc - x * x.log2())
}

fn clamped_spectrum<T: Real>(eig: &EigenSystem<T>) -> Result<Vec<T>> {
    let floor = -T::tol(NEG_EIG_TOL);
    eig.eigenvalues
        .iter()
        .map(|&l| {
            if l < floor {
                Err(Error::InvalidDensity(format!("negative eigenvalue {l}")))
            } else {
                Ok(l.max(T::zero()))
            }
        })
        .collect()
}

/// Von Neumann entropy `−tr ρ log₂ ρ` in bits.
pub fn entropy<T: Real>(rho: &DensityOperator<T>) -> Result<T> {
    let eig = rho.eigen()?;
    Ok(shannon_bits(&clamped_spectrum(&eig)?))
}

/// Entropy of the reduced state on `parties` (space indices); an empty set
/// has zero entropy.
pub(crate) fn entropy_of<T: Real>(rho: &DensityOperator<T>, parties: &[usize]) -> Result<T> {
    if parties.is_empty() {
        return Ok(T::zero());
    }
    entropy(&rho.partial_trace(parties)?)
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

fn disjoint(sets: &[&[usize]]) -> bool {
    let total: usize = sets.iter().map(|s| s.len()).sum();
    let mut all: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.len() == total
}

/// `I(a:b) = S_a + S_b − S_ab` on index sets; empty sets give 0.
pub(crate) fn mi_indices<T: Real>(rho: &DensityOperator<T>, a: &[usize], b: &[usize]) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Ok(T::zero());
    }
    Ok(entropy_of(rho, a)? + entropy_of(rho, b)? - entropy_of(rho, &union(a, b))?)
}

/// `I(a:b|c) = S_ac + S_bc − S_c − S_abc` on index sets; empty `a` or `b` gives 0.
pub(crate) fn cmi_indices<T: Real>(
    rho: &DensityOperator<T>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<T> {
    if a.is_empty() || b.is_empty() {
        return Ok(T::zero());
    }
    let ac = union(a, c);
    let bc = union(b, c);
    let abc = union(&ac, b);
    Ok(entropy_of(rho, &ac)? + entropy_of(rho, &bc)? - entropy_of(rho, c)? - entropy_of(rho, &abc)?)
}

/// Quantum mutual information `I(a:b) = S_a + S_b − S_ab`.
pub fn mutual_info<T: Real, S: AsRef<str>>(rho: &DensityOperator<T>, a: &[S], b: &[S]) -> Result<T> {
    let (a, b) = (rho.space().resolve(a)?, rho.space().resolve(b)?);
    if a.is_empty() || b.is_empty() {
        return Err(Error::arg("mutual information needs two nonempty party sets"));
    }
    if !disjoint(&[&a, &b]) {
        return Err(Error::arg("party sets overlap"));
    }
    mi_indices(rho, &a, &b)
}

/// Conditional mutual information `I(a:b|c) = S_ac + S_bc − S_c − S_abc`.
/// An empty `c` reduces to [`mutual_info`].
pub fn conditional_mutual_info<T: Real, S: AsRef<str>>(
    rho: &DensityOperator<T>,
    a: &[S],
    b: &[S],
    c: &[S],
) -> Result<T> {
    let space = rho.space();
    let (a, b, c) = (space.resolve(a)?, space.resolve(b)?, space.resolve(c)?);
    if a.is_empty() || b.is_empty() {
        return Err(Error::arg("conditional mutual information needs nonempty a and b"));
    }
    if !disjoint(&[&a, &b, &c]) {
        return Err(Error::arg("party sets overlap"));
    }
    cmi_indices(rho, &a, &b, &c)
}

/// Mutual information of a pure system/environment state and its split into
/// a classical and a quantum share of `S_E` bits each.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureBipartiteInfo {
    /// `2·S_E`.
    pub total: f64,
    pub classical: f64,
    pub quantum: f64,
    pub env_entropy: f64,
}

/// `I = S_S + S_E − S_SE = 2·S_E` for a pure state split into system and `env`.
pub fn mutual_info_pure_bipartite<T: Real, S: AsRef<str>>(
    psi: &PureState<T>,
    env: &[S],
) -> Result<PureBipartiteInfo> {
    let env = psi.space().resolve(env)?;
    if env.is_empty() || env.len() == psi.space().len() {
        return Err(Error::arg("environment must be a nonempty proper subset of the parties"));
    }
    let rho_e = crate::linalg::partial_trace_pure(psi.amplitudes(), &psi.space().dims(), &env)?;
    let rho_e = DensityOperator::new(psi.space().select(&env)?, rho_e)?;
    let s_e = entropy(&rho_e)?.to_f64();
    Ok(PureBipartiteInfo {
        total: 2.0 * s_e,
        classical: s_e,
        quantum: s_e,
        env_entropy: s_e,
    })
}
