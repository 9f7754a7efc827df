use crate::error::Result;
use crate::limits::check_dim;
use crate::rng::SeededRng;
use crate::scalar::{cr, Real, C};

use super::{inner, norm, Matrix};

/// Haar-distributed unit vector of length `dim`: a normalized complex
/// Gaussian vector.
pub fn haar_vector<T: Real>(dim: usize, rng: &mut SeededRng) -> Result<Vec<C<T>>> {
    check_dim(dim)?;
    loop {
        let v: Vec<C<T>> = (0..dim).map(|_| rng.complex_normal()).collect();
        let n = norm(&v);
        if n > T::zero() {
            return Ok(v.into_iter().map(|z| z / n).collect());
        }
    }
}

/// Haar-distributed unitary: Gram–Schmidt QR of a complex Ginibre matrix.
/// Gram–Schmidt leaves `R` with a positive real diagonal, which is the
/// normalization that makes `Q` Haar.
pub fn haar_unitary<T: Real>(dim: usize, rng: &mut SeededRng) -> Result<Matrix<T>> {
    check_dim(dim)?;
    let mut cols: Vec<Vec<C<T>>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C<T>> = (0..dim).map(|_| rng.complex_normal()).collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &cols {
                let proj = inner(q, &v);
                for (x, &qq) in v.iter_mut().zip(q) {
                    *x = *x - qq * proj;
                }
            }
        }
        let n = norm(&v);
        if n > T::tol(1e-8) {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    Ok(Matrix::from_columns(&cols))
}

/// Random Hermitian matrix with independent Gaussian entries (GUE-like).
pub fn random_hermitian<T: Real>(dim: usize, rng: &mut SeededRng) -> Result<Matrix<T>> {
    check_dim(dim)?;
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = cr(T::lit(rng.normal()));
        for j in (i + 1)..dim {
            let z: C<T> = rng.complex_normal();
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Ok(m)
}

/// Random full-rank density matrix `G·G†/tr(G·G†)` with `G` Ginibre.
pub fn random_density_matrix<T: Real>(dim: usize, rng: &mut SeededRng) -> Result<Matrix<T>> {
    check_dim(dim)?;
    let g = Matrix::from_fn(dim, dim, |_, _| rng.complex_normal::<T>());
    let gg = g.matmul(&g.adjoint())?;
    let tr = gg.trace().re;
    let mut out = gg.scale(cr(T::one() / tr));
    // exact Hermitian symmetry
    for i in 0..dim {
        out[(i, i)] = cr(out[(i, i)].re);
        for j in (i + 1)..dim {
            out[(j, i)] = out[(i, j)].conj();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = SeededRng::new(11);
        for d in 1..6 {
            let u = haar_unitary::<f64>(d, &mut rng).unwrap();
            assert!(u.is_unitary(1e-12));
        }
    }

    #[test]
    fn density_matrix_is_valid() {
        let mut rng = SeededRng::new(3);
        let rho = random_density_matrix::<f64>(4, &mut rng).unwrap();
        assert!(rho.is_hermitian(0.0));
        assert!((rho.trace() - C::new(1.0, 0.0)).norm() < 1e-14);
        assert!(rho[(0, 1)].norm() > 0.0);
    }
}
