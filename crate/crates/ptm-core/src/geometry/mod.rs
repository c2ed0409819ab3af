//! Finite-dimensional geometry of the coset space near the origin:
//! exponential chart, invariant frames, covariant derivative, fundamental
//! fields, orbit data.

mod chart;
mod frame;
mod orbit;

pub use chart::Chart;
pub use frame::{
    covariant_derivative_at_origin, frame_matrix, frame_sharp, frame_sharp_dexp, frame_sharp_fd,
    fundamental_field, metric_matrix, VectorFieldOnChart,
};
pub use orbit::{su2_latitude_orbit, OrbitSpec, OrbitSpecJson};
