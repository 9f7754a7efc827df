//! Hermitian eigensolver and singular value decomposition, both built on
//! complex Jacobi rotations. Deterministic: fixed sweep order, stable
//! descending sort, and a fixed phase convention on the vectors.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cr, Real, C};

use super::{norm, Matrix};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T: Real> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Matrix<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn eigenvector(&self, k: usize) -> Vec<C<T>> {
        self.eigenvectors.column(k)
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> Matrix<T> {
        let v = &self.eigenvectors;
        let vd = Matrix::from_fn(v.rows(), v.cols(), |i, j| v[(i, j)] * self.eigenvalues[j]);
        vd.matmul(&v.adjoint()).expect("square")
    }
}

/// Unitary 2×2 rotation `J` (entries pp, pq, qp, qq) with `J†·H·J` diagonal for
/// `H = [[app, apq], [conj(apq), aqq]]`.
fn jacobi_rotation<T: Real>(app: T, aqq: T, apq: C<T>) -> [C<T>; 4] {
    let mag = apq.norm();
    let ph = apq / mag; // e^{iφ}
    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * mag);
    let t = if theta.abs() > T::lit(1e150).min(T::max_value().sqrt()) {
        T::one() / (two * theta)
    } else {
        let sign = if theta < T::zero() { -T::one() } else { T::one() };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;
    let d = ph.conj();
    [cr(cs), cr(sn), d * (-sn), d * cs]
}

fn rotate_columns<T: Real>(m: &mut Matrix<T>, p: usize, q: usize, j: &[C<T>; 4]) {
    for k in 0..m.rows() {
        let (mp, mq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mp * j[0] + mq * j[2];
        m[(k, q)] = mp * j[1] + mq * j[3];
    }
}

fn rotate_rows_adjoint<T: Real>(m: &mut Matrix<T>, p: usize, q: usize, j: &[C<T>; 4]) {
    let jc = [j[0].conj(), j[1].conj(), j[2].conj(), j[3].conj()];
    for k in 0..m.cols() {
        let (mp, mq) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = jc[0] * mp + jc[2] * mq;
        m[(q, k)] = jc[1] * mp + jc[3] * mq;
    }
}

fn off_diagonal_sq<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// Makes the first component above `tiny` of each column real and positive.
pub(crate) fn fix_phase<T: Real>(v: &mut [C<T>], tiny: T) -> C<T> {
    let pivot = v.iter().copied().find(|z| z.norm() > tiny);
    match pivot {
        Some(z) => {
            let ph = z.conj() / z.norm();
            for x in v.iter_mut() {
                *x = *x * ph;
            }
            ph
        }
        None => C::one(),
    }
}

fn descending<T: Real>(a: &T, b: &T) -> Ordering {
    b.partial_cmp(a).unwrap_or(Ordering::Equal)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Eigenvalues come out descending; ties keep their diagonal order. Each
/// eigenvector has its first non-negligible component real and positive.
pub fn eig_hermitian<T: Real>(a: &Matrix<T>) -> Result<EigenSystem<T>> {
    if !a.is_square() {
        return Err(Error::shape(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    if !a.is_hermitian(T::tol(1e-10)) {
        return Err(Error::Contract("eig_hermitian requires a Hermitian matrix".into()));
    }
    let n = a.rows();
    // symmetrize so rounding in the input cannot bias the sweeps
    let mut m = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            cr(a[(i, i)].re)
        } else {
            (a[(i, j)] + a[(j, i)].conj()) * T::lit(0.5)
        }
    });
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    if scale > T::zero() {
        let target = (T::epsilon() * scale) * (T::epsilon() * scale);
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_sq(&m) <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[(p, q)];
                    if apq.norm() <= T::min_positive_value() {
                        continue;
                    }
                    let j = jacobi_rotation(m[(p, p)].re, m[(q, q)].re, apq);
                    rotate_columns(&mut m, p, q, &j);
                    rotate_rows_adjoint(&mut m, p, q, &j);
                    m[(p, q)] = C::zero();
                    m[(q, p)] = C::zero();
                    m[(p, p)] = cr(m[(p, p)].re);
                    m[(q, q)] = cr(m[(q, q)].re);
                    rotate_columns(&mut v, p, q, &j);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| descending(&m[(i, i)].re, &m[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| m[(i, i)].re).collect();
    let tiny = T::tol(1e-12);
    let cols: Vec<Vec<C<T>>> = order
        .iter()
        .map(|&i| {
            let mut col = v.column(i);
            fix_phase(&mut col, tiny);
            col
        })
        .collect();
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors: Matrix::from_columns(&cols),
    })
}

/// Thin singular value decomposition `M = Σ_k s_k |u_k⟩⟨v_k|`.
///
/// `s` has `min(rows, cols)` entries in descending order. Singular vectors
/// belonging to zero singular values may be zero vectors.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    pub s: Vec<T>,
    pub u: Vec<Vec<C<T>>>,
    pub v: Vec<Vec<C<T>>>,
}

/// One-sided (Hestenes) Jacobi SVD. Singular values carry high relative
/// accuracy, so values near zero stay near zero.
pub fn svd<T: Real>(m: &Matrix<T>) -> Svd<T> {
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint());
        return Svd { s: t.s, u: t.v, v: t.u };
    }
    let (r, n) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = Matrix::<T>::identity(n);
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), C::<T>::zero());
                for k in 0..r {
                    let (x, y) = (a[(k, p)], a[(k, q)]);
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                if gamma.norm() <= eps * (alpha * beta).sqrt() || gamma.norm() <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let j = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut a, p, q, &j);
                rotate_columns(&mut v, p, q, &j);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<(T, Vec<C<T>>, Vec<C<T>>)> = (0..n)
        .map(|k| {
            let col = a.column(k);
            let s = norm(&col);
            let u = if s > T::min_positive_value() {
                col.iter().map(|&z| z / s).collect()
            } else {
                vec![C::zero(); r]
            };
            (s, u, v.column(k))
        })
        .collect();
    sv.sort_by(|x, y| descending(&x.0, &y.0));
    let mut out = Svd { s: Vec::with_capacity(n), u: Vec::with_capacity(n), v: Vec::with_capacity(n) };
    for (s, u, vv) in sv {
        out.s.push(s);
        out.u.push(u);
        out.v.push(vv);
    }
    out
}
