//! Two hard-coded illustrations: which-path decoherence in a double slit and
//! atom-field entanglement during a Rabi cycle.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::partial_trace_pure;
use crate::scalar::{c, cr, Real, C};
use crate::states::{DensityOperator, MultipartiteSpace, PureState};

use super::entropy;

/// `(|r⟩|R⟩ + |l⟩|L⟩)/√2` with apparatus states chosen so that `⟨R|L⟩ = overlap`.
pub fn slit_state<T: Real>(overlap: C<T>) -> Result<PureState<T>> {
    let mag = overlap.norm();
    if mag > T::one() + T::tol(1e-12) {
        return Err(Error::arg(format!("apparatus overlap magnitude {mag} exceeds 1")));
    }
    let space = MultipartiteSpace::new([("electron", 2), ("apparatus", 2)])?;
    let h = T::FRAC_1_SQRT_2();
    let rest = (T::one() - mag * mag).max(T::zero()).sqrt();
    // |R⟩ = |0⟩, |L⟩ = overlap|0⟩ + √(1−|overlap|²)|1⟩
    let amps = vec![cr(h), C::zero(), overlap * h, cr(rest * h)];
    PureState::normalized(space, amps)
}

/// Electron state after tracing out the apparatus.
pub fn slit_reduced<T: Real>(overlap: C<T>) -> Result<DensityOperator<T>> {
    let psi = slit_state(overlap)?;
    let m = partial_trace_pure(psi.amplitudes(), &psi.space().dims(), &[0])?;
    DensityOperator::new(psi.space().select(&[0])?, m)
}

/// Fringe visibility `2·|ρ_rl|` of the electron; equals `|overlap|`.
pub fn slit_visibility<T: Real>(overlap: C<T>) -> Result<T> {
    let rho = slit_reduced(overlap)?;
    Ok(T::lit(2.0) * rho.matrix()[(0, 1)].norm())
}

/// `cos(gt)|e,n−1⟩ − i·sin(gt)|g,n⟩`. Atom basis `(g, e)`, field basis `(n−1, n)`.
pub fn rabi_state<T: Real>(gt: T) -> Result<PureState<T>> {
    let space = MultipartiteSpace::new([("atom", 2), ("field", 2)])?;
    let mut amps = vec![C::<T>::zero(); 4];
    amps[2] = cr(gt.cos()); // |e, n−1⟩
    amps[1] = c(T::zero(), -gt.sin()); // |g, n⟩
    PureState::normalized(space, amps)
}

/// Entanglement entropy of the atom, `H₂(cos² gt)` bits.
pub fn rabi_entanglement<T: Real>(gt: T) -> T {
    let psi = rabi_state(gt).expect("valid two-level state");
    let m = partial_trace_pure(psi.amplitudes(), &[2, 2], &[0]).expect("fixed shape");
    let rho = DensityOperator::new(psi.space().select(&[0]).expect("atom"), m).expect("traced state");
    entropy(&rho).expect("positive spectrum")
}

