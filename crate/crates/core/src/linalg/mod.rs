//! Dense complex linear algebra: Kronecker products, partial traces,
//! Hermitian eigensystems, singular values and seeded Haar sampling.

mod eigen;
mod matrix;
mod random;
mod trace;

pub use eigen::{eig_hermitian, svd, EigenSystem, Svd};
pub use matrix::{inner, kron, kron_vec, norm, Matrix};
pub use random::{haar_unitary, haar_vector, random_density_matrix, random_hermitian};
pub use trace::{partial_trace, partial_trace_pure};

pub(crate) use eigen::fix_phase;
pub(crate) use trace::{reshape_cut, split_indices as trace_split};
