use num_traits::Zero;

use crate::error::{Error, Result};
use crate::limits::checked_total;
use crate::scalar::{Real, C};

use super::Matrix;

/// Splits full mixed-radix indices over `dims` into (kept index, traced index)
/// pairs. Both sub-indices keep the original party order, first party most
/// significant.
pub(crate) fn split_indices(dims: &[usize], keep: &[usize]) -> (Vec<usize>, Vec<usize>, usize, usize) {
    let total: usize = dims.iter().product();
    let mut keep_mask = vec![false; dims.len()];
    for &k in keep {
        keep_mask[k] = true;
    }
    let kept_dim: usize = dims.iter().zip(&keep_mask).filter(|(_, &m)| m).map(|(d, _)| d).product();
    let traced_dim = total / kept_dim;
    let mut kidx = vec![0usize; total];
    let mut tidx = vec![0usize; total];
    let mut digits = vec![0usize; dims.len()];
    for full in 0..total {
        let (mut k, mut t) = (0usize, 0usize);
        for (p, &d) in dims.iter().enumerate() {
            if keep_mask[p] {
                k = k * d + digits[p];
            } else {
                t = t * d + digits[p];
            }
        }
        kidx[full] = k;
        tidx[full] = t;
        // increment the mixed-radix counter, last party fastest
        for p in (0..dims.len()).rev() {
            digits[p] += 1;
            if digits[p] < dims[p] {
                break;
            }
            digits[p] = 0;
        }
    }
    (kidx, tidx, kept_dim, traced_dim)
}

fn validate_keep(n_parties: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::arg("keep set must be nonempty"));
    }
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::arg("keep set contains duplicates"));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= n_parties) {
        return Err(Error::arg(format!(
            "party index {bad} out of range for {n_parties} parties"
        )));
    }
    Ok(sorted)
}

/// Traces out every party not listed in `keep`.
///
/// `rho` must be square with side `Π dims`. The result is indexed by the kept
/// parties in their original order, regardless of the order of `keep`.
pub fn partial_trace<T: Real>(rho: &Matrix<T>, dims: &[usize], keep: &[usize]) -> Result<Matrix<T>> {
    if dims.contains(&0) {
        return Err(Error::shape("zero party dimension"));
    }
    let total = checked_total(dims)?;
    if !rho.is_square() || rho.rows() != total {
        return Err(Error::shape(format!(
            "matrix is {}x{} but the party dimensions multiply to {total}",
            rho.rows(),
            rho.cols()
        )));
    }
    let keep = validate_keep(dims.len(), keep)?;
    if keep.len() == dims.len() {
        return Ok(rho.clone());
    }
    let (kidx, tidx, kd, td) = split_indices(dims, &keep);
    // full index of (kept k, traced t)
    let mut full_of = vec![0usize; total];
    for full in 0..total {
        full_of[kidx[full] * td + tidx[full]] = full;
    }
    let mut out = Matrix::zeros(kd, kd);
    for a in 0..kd {
        for b in 0..kd {
            let mut acc = C::<T>::zero();
            for t in 0..td {
                acc = acc + rho[(full_of[a * td + t], full_of[b * td + t])];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(out)
}

/// Reduced density matrix `tr_rest |ψ⟩⟨ψ|` computed straight from amplitudes.
pub fn partial_trace_pure<T: Real>(psi: &[C<T>], dims: &[usize], keep: &[usize]) -> Result<Matrix<T>> {
    let total = checked_total(dims)?;
    if psi.len() != total {
        return Err(Error::shape(format!(
            "vector of length {} for total dimension {total}",
            psi.len()
        )));
    }
    let keep = validate_keep(dims.len(), keep)?;
    let m = reshape_cut(psi, dims, &keep);
    Ok(m.matmul(&m.adjoint()).expect("compatible"))
}

/// Reshapes amplitudes into the matrix `M[l, r]` for the cut `left | rest`.
pub(crate) fn reshape_cut<T: Real>(psi: &[C<T>], dims: &[usize], left: &[usize]) -> Matrix<T> {
    let (kidx, tidx, kd, td) = split_indices(dims, left);
    let mut m = Matrix::zeros(kd, td);
    for (full, &amp) in psi.iter().enumerate() {
        m[(kidx[full], tidx[full])] = amp;
    }
    m
}
