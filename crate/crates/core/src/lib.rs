//! Entropy and mutual-information decompositions over partitioned
//! multipartite quantum states, a "quantum structure" diagram representation
//! of entangled states, and checks of its invariance under local base
//! rotations, envariant unitary pairs and party exchange.
//!
//! The numerical layers ([`linalg`], [`states`], [`info`]) are generic over
//! the [`Real`] scalar; the aliases below fix it to `f64` (or `f32`).

pub mod error;
pub mod info;
pub mod limits;
pub mod notation;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod states;
pub mod structure;
pub mod symmetry;

pub use error::{Error, Result};
pub use scalar::{Real, C};

/// Double-precision complex scalar.
pub type Complex64 = num_complex::Complex<f64>;

pub type CMatrix = linalg::Matrix<f64>;
pub type EigenSystem = linalg::EigenSystem<f64>;
pub type PureState = states::PureState<f64>;
pub type DensityOperator = states::DensityOperator<f64>;
pub type Ensemble = states::Ensemble<f64>;
pub type SchmidtDecomposition = states::SchmidtDecomposition<f64>;

pub type CMatrix32 = linalg::Matrix<f32>;
pub type PureState32 = states::PureState<f32>;
pub type DensityOperator32 = states::DensityOperator<f32>;

pub use info::MutualInfoReport;
pub use states::{ModelKind, MultipartiteSpace, PartitionModel, Role};
