use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{haar_vector, inner, norm, Matrix};
use crate::rng::SeededRng;
use crate::scalar::{is_finite, Real, C};

use super::{DensityOperator, MultipartiteSpace};

/// Normalized amplitude vector over a [`MultipartiteSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    space: MultipartiteSpace,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    /// Requires `‖amplitudes‖₂ = 1 ± 1e−10`.
    pub fn new(space: MultipartiteSpace, amplitudes: Vec<C<T>>) -> Result<Self> {
        Self::check_shape(&space, &amplitudes)?;
        let n = norm(&amplitudes);
        if (n - T::one()).abs() > T::tol(1e-10) {
            return Err(Error::arg(format!("state norm {n} deviates from 1")));
        }
        Ok(PureState { space, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(space: MultipartiteSpace, amplitudes: Vec<C<T>>) -> Result<Self> {
        Self::check_shape(&space, &amplitudes)?;
        let n = norm(&amplitudes);
        if n <= T::zero() {
            return Err(Error::arg("zero vector cannot be normalized"));
        }
        let amplitudes = amplitudes.into_iter().map(|z| z / n).collect();
        Ok(PureState { space, amplitudes })
    }

    fn check_shape(space: &MultipartiteSpace, amplitudes: &[C<T>]) -> Result<()> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::shape(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                space.total_dim()
            )));
        }
        if !amplitudes.iter().all(|&z| is_finite(z)) {
            return Err(Error::NonFinite("amplitudes"));
        }
        Ok(())
    }

    /// Computational basis state with the given per-party digits.
    pub fn basis(space: MultipartiteSpace, digits: &[usize]) -> Result<Self> {
        let idx = space.basis_index(digits)?;
        let mut amplitudes = vec![C::zero(); space.total_dim()];
        amplitudes[idx] = C::one();
        Ok(PureState { space, amplitudes })
    }

    /// Haar-random state; identical `(space, seed)` gives bit-identical output.
    pub fn haar_random(space: MultipartiteSpace, seed: u64) -> Result<Self> {
        let mut rng = SeededRng::new(seed);
        Self::haar_random_with(space, &mut rng)
    }

    pub fn haar_random_with(space: MultipartiteSpace, rng: &mut SeededRng) -> Result<Self> {
        let amplitudes = haar_vector(space.total_dim(), rng)?;
        Ok(PureState { space, amplitudes })
    }

    pub fn space(&self) -> &MultipartiteSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<C<T>> {
        Ok(self.amplitudes[self.space.basis_index(digits)?])
    }

    pub fn inner(&self, other: &Self) -> C<T> {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// `|⟨self|other⟩|`, the overlap up to global phase.
    pub fn overlap(&self, other: &Self) -> T {
        self.inner(other).norm()
    }

    /// `min_φ ‖other − e^{iφ}·self‖₂`, attained at `φ = arg⟨self|other⟩`.
    pub fn distance_up_to_phase(&self, other: &Self) -> T {
        let ip = self.inner(other);
        let ph = if ip.norm() > T::zero() { ip / ip.norm() } else { C::one() };
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(&a, &b)| (b - a * ph).norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Plain Euclidean distance `‖other − self‖₂`.
    pub fn distance(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(&a, &b)| (b - a).norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> DensityOperator<T> {
        DensityOperator::from_parts_unchecked(
            self.space.clone(),
            Matrix::outer(&self.amplitudes, &self.amplitudes),
        )
    }

    /// Product state `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let space = self.space.tensor(&other.space)?;
        let amplitudes = crate::linalg::kron_vec(&self.amplitudes, &other.amplitudes);
        Ok(PureState { space, amplitudes })
    }

    /// Applies a unitary on the whole space.
    pub fn apply(&self, u: &Matrix<T>) -> Result<Self> {
        let amplitudes = u.matvec(&self.amplitudes)?;
        Self::new(self.space.clone(), amplitudes)
    }

    /// Applies `u` on the single party `party`.
    pub fn apply_local(&self, party: usize, u: &Matrix<T>) -> Result<Self> {
        let dims = self.space.dims();
        let d = *dims
            .get(party)
            .ok_or_else(|| Error::arg(format!("party index {party} out of range")))?;
        if u.rows() != d || u.cols() != d {
            return Err(Error::shape(format!(
                "{}x{} operator on a party of dimension {d}",
                u.rows(),
                u.cols()
            )));
        }
        let inner_stride: usize = dims[party + 1..].iter().product();
        let outer = self.amplitudes.len() / (d * inner_stride);
        let mut out = vec![C::zero(); self.amplitudes.len()];
        let mut buf = vec![C::zero(); d];
        for o in 0..outer {
            for s in 0..inner_stride {
                let base = o * d * inner_stride + s;
                for (k, b) in buf.iter_mut().enumerate() {
                    *b = self.amplitudes[base + k * inner_stride];
                }
                for i in 0..d {
                    let mut acc = C::zero();
                    for (k, &b) in buf.iter().enumerate() {
                        acc = acc + u[(i, k)] * b;
                    }
                    out[base + i * inner_stride] = acc;
                }
            }
        }
        Ok(PureState { space: self.space.clone(), amplitudes: out })
    }

    /// Reorders parties: party `order[k]` of `self` becomes party `k`.
    pub fn permute_parties(&self, order: &[usize]) -> Result<Self> {
        let n = self.space.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::arg("party order must be a permutation"));
        }
        let parties = self.space.parties();
        let space = MultipartiteSpace::new(order.iter().map(|&i| (parties[i].label.clone(), parties[i].dim)))?;
        let mut out = vec![C::zero(); self.amplitudes.len()];
        for (idx, &a) in self.amplitudes.iter().enumerate() {
            let digits = self.space.digits(idx);
            let new_digits: Vec<usize> = order.iter().map(|&i| digits[i]).collect();
            out[space.basis_index(&new_digits)?] = a;
        }
        Ok(PureState { space, amplitudes: out })
    }

    /// Same amplitudes relabelled onto another space of identical shape.
    pub fn relabel(&self, space: MultipartiteSpace) -> Result<Self> {
        if space.dims() != self.space.dims() {
            return Err(Error::Space(format!("{} has a different shape from {}", space, self.space)));
        }
        Ok(PureState { space, amplitudes: self.amplitudes.clone() })
    }
}

/// Haar-random pure state over anonymous parties `P0, P1, …`.
pub fn haar_random_state<T: Real>(dims: &[usize], seed: u64) -> Result<PureState<T>> {
    PureState::haar_random(MultipartiteSpace::anonymous(dims)?, seed)
}
