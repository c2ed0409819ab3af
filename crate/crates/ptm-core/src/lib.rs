//! Numerical laboratory for parallel transport maps over reductive
//! homogeneous spaces.
//!
//! The library realizes the transport map from the truncated Fourier model of
//! L^2([0,1], g) onto a coset space G/K, assembles shape operators of its
//! fibers and of lifted orbit submanifolds in a compatible block basis, and
//! turns the structural identities (affine-submersion property, block-norm
//! decay, vanishing diagonals, regularized-trace identities) into
//! machine-checkable reports.
//!
//! All numerical kernels are generic over the scalar type via [`scalar::Real`]
//! (f64 is the working precision, f32 compiles and is smoke-tested); concrete
//! f64 aliases for the main types live at the crate root.

pub mod error;
pub mod geometry;
pub mod lie;
pub mod paths;
pub mod scalar;
pub mod spectra;
pub mod tol;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tol::Tolerances;

/// Concrete f64 aliases for the main domain types.
pub type LieAlgebraBasis64 = lie::LieAlgebraBasis<f64>;
pub type ReductivePair64 = lie::ReductivePair<f64>;
pub type CatalogEntry64 = lie::CatalogEntry<f64>;
pub type GroupElement64 = lie::GroupElement<f64>;
pub type FourierPath64 = paths::FourierPath<f64>;
pub type GroupPath64 = paths::GroupPath<f64>;
pub type Chart64 = geometry::Chart<f64>;
pub type OrbitSpec64 = geometry::OrbitSpec<f64>;
pub type SolverConfig64 = transport::SolverConfig<f64>;
pub type TransportResult64 = transport::TransportResult<f64>;
pub type CompatibleBasis64 = spectra::CompatibleBasis<f64>;
pub type ShapeOperatorMatrix64 = spectra::ShapeOperatorMatrix<f64>;
pub type SpectrumReport64 = spectra::SpectrumReport;
