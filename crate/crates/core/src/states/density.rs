use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, partial_trace, EigenSystem, Matrix};
use crate::scalar::{cr, Real};

use super::MultipartiteSpace;

/// Hermitian, unit-trace operator over a [`MultipartiteSpace`].
///
/// Positivity is not enforced at construction; entropy evaluation rejects
/// eigenvalues below `−1e−10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Real> {
    space: MultipartiteSpace,
    matrix: Matrix<T>,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(space: MultipartiteSpace, matrix: Matrix<T>) -> Result<Self> {
        let n = space.total_dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::shape(format!(
                "{}x{} matrix for total dimension {n}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_hermitian(T::tol(1e-10)) {
            return Err(Error::InvalidDensity("matrix is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr - cr(T::one())).norm() > T::tol(1e-10) {
            return Err(Error::InvalidDensity(format!("trace {} is not 1", tr.re)));
        }
        Ok(DensityOperator { space, matrix })
    }

    pub(crate) fn from_parts_unchecked(space: MultipartiteSpace, matrix: Matrix<T>) -> Self {
        DensityOperator { space, matrix }
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(space: MultipartiteSpace) -> Self {
        let d = space.total_dim();
        let matrix = Matrix::identity(d).scale(cr(T::one() / T::lit(d as f64)));
        DensityOperator { space, matrix }
    }

    pub fn space(&self) -> &MultipartiteSpace {
        &self.space
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn eigen(&self) -> Result<EigenSystem<T>> {
        eig_hermitian(&self.matrix)
    }

    /// Keeps the parties at `keep` (space order), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let matrix = partial_trace(&self.matrix, &self.space.dims(), keep)?;
        Ok(DensityOperator { space: self.space.select(keep)?, matrix })
    }

    /// Reduced state on the labelled parties.
    pub fn reduced<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let keep = self.space.resolve(labels)?;
        self.partial_trace(&keep)
    }

    /// Traces out the labelled parties.
    pub fn trace_out<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let drop = self.space.resolve(labels)?;
        let keep: Vec<usize> = (0..self.space.len()).filter(|i| !drop.contains(i)).collect();
        self.partial_trace(&keep)
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> T {
        // tr(ρ²) = Σ_ij |ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `U·ρ·U†`.
    pub fn conjugated(&self, u: &Matrix<T>) -> Result<Self> {
        let matrix = self.matrix.conjugate_by(u)?;
        Ok(DensityOperator { space: self.space.clone(), matrix })
    }
}
