use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{fix_phase, reshape_cut, svd};
use crate::scalar::{Real, C};

use super::{MultipartiteSpace, PureState};

/// Singular values at or below this are not counted in the Schmidt rank.
pub const SCHMIDT_RANK_TOL: f64 = 1e-12;

/// `|ψ⟩ = Σ_k λ_k |L_k⟩|R_k⟩` across a cut of the party list.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtDecomposition<T: Real> {
    space: MultipartiteSpace,
    left: Vec<usize>,
    right: Vec<usize>,
    /// Descending, only the nonzero ones.
    pub coefficients: Vec<T>,
    pub left_basis: Vec<Vec<C<T>>>,
    pub right_basis: Vec<Vec<C<T>>>,
}

impl<T: Real> SchmidtDecomposition<T> {
    pub fn left_labels(&self) -> Vec<&str> {
        self.left.iter().map(|&i| self.space.parties()[i].label.as_str()).collect()
    }

    pub fn right_labels(&self) -> Vec<&str> {
        self.right.iter().map(|&i| self.space.parties()[i].label.as_str()).collect()
    }

    pub fn left_indices(&self) -> &[usize] {
        &self.left
    }

    pub fn right_indices(&self) -> &[usize] {
        &self.right
    }

    pub fn left_dim(&self) -> usize {
        self.left.iter().map(|&i| self.space.parties()[i].dim).product()
    }

    pub fn right_dim(&self) -> usize {
        self.right.iter().map(|&i| self.space.parties()[i].dim).product()
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<T> {
        let mut out = self.coefficients.clone();
        out.resize(len.max(out.len()), T::zero());
        out
    }

    /// Entanglement entropy `−Σ λ² log₂ λ²` in bits.
    pub fn entropy(&self) -> T {
        self.coefficients
            .iter()
            .map(|&l| l * l)
            .filter(|&p| p > T::zero())
            .map(|p| -p * p.log2())
            .sum()
    }

    /// Amplitudes of `Σ λ_k |L_k⟩|R_k⟩` in the original party order.
    pub fn reconstruct(&self) -> Vec<C<T>> {
        let dims = self.space.dims();
        let (kidx, tidx, _, _) = crate::linalg::trace_split(&dims, &self.left);
        (0..self.space.total_dim())
            .map(|full| {
                let (l, r) = (kidx[full], tidx[full]);
                (0..self.rank())
                    .map(|k| self.left_basis[k][l] * self.right_basis[k][r] * self.coefficients[k])
                    .fold(C::zero(), |a, b| a + b)
            })
            .collect()
    }
}

/// ℓ₂ distance between two coefficient lists after zero padding.
pub fn spectrum_distance<T: Real>(a: &[T], b: &[T]) -> T {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or_else(T::zero);
            let y = b.get(k).copied().unwrap_or_else(T::zero);
            (x - y) * (x - y)
        })
        .sum::<T>()
        .sqrt()
}

/// Schmidt decomposition of `psi` for the cut `left | rest`.
pub fn schmidt<T: Real, S: AsRef<str>>(psi: &PureState<T>, left: &[S]) -> Result<SchmidtDecomposition<T>> {
    let left = psi.space().resolve(left)?;
    schmidt_by_index(psi, &left)
}

pub fn schmidt_by_index<T: Real>(psi: &PureState<T>, left: &[usize]) -> Result<SchmidtDecomposition<T>> {
    let space = psi.space();
    let n = space.len();
    let mut left = left.to_vec();
    left.sort_unstable();
    left.dedup();
    if left.is_empty() || left.len() >= n {
        return Err(Error::arg("Schmidt cut must split the parties into two nonempty sets"));
    }
    if left.iter().any(|&i| i >= n) {
        return Err(Error::arg("party index out of range"));
    }
    let right: Vec<usize> = (0..n).filter(|i| !left.contains(i)).collect();
    let m = reshape_cut(psi.amplitudes(), &space.dims(), &left);
    let dec = svd(&m);
    let tol = T::tol(SCHMIDT_RANK_TOL);
    let tiny = T::tol(1e-12);
    let mut out = SchmidtDecomposition {
        space: space.clone(),
        left,
        right,
        coefficients: Vec::new(),
        left_basis: Vec::new(),
        right_basis: Vec::new(),
    };
    for ((s, mut u), v) in dec.s.into_iter().zip(dec.u).zip(dec.v) {
        if s <= tol {
            continue;
        }
        let ph = fix_phase(&mut u, tiny);
        // M = Σ s u v†, so the right factor of the ket is conj(v)
        let r: Vec<C<T>> = v.iter().map(|z| z.conj() * ph.conj()).collect();
        out.coefficients.push(s);
        out.left_basis.push(u);
        out.right_basis.push(r);
    }
    Ok(out)
}
