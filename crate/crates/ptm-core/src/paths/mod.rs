//! Finite Fourier model of the path space L^2([0,1], g): truncated paths,
//! inner products, integrals, projections, and sampled group paths.

mod fourier;
mod group_path;
mod quadrature;

pub use fourier::{FourierPath, FourierPathJson, IneqReport, LinearTrigPath};
pub use group_path::GroupPath;
pub(crate) use group_path::interpolate as group_path_interpolate;
pub use quadrature::QuadratureGrid;
