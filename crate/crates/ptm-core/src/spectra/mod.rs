//! Shape-operator assembly in the compatible basis, eigenvalue analysis,
//! regularized traces, and decay diagnostics.

mod assemble;
mod basis;
mod report;

pub use assemble::{
    assemble_fiber_shape_operator, assemble_fiber_via_path_algebra,
    assemble_orbit_shape_operator, ShapeOperatorMatrix,
};
pub use basis::{Block, CompatibleBasis};
pub use report::{
    austere_check, block_norm_decay, eigen_spectrum, full_report, group_eigenvalues,
    perturbation_probe, regularized_trace_i, regularized_trace_ii, AustereReport, DecayReport,
    EigenvalueEntry, ProbeReport, SpectrumReport, TraceIIReport, TraceIReport,
};
