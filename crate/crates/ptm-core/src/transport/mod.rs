//! The parallel transport map and its gauge structure: Lie-group ODE solves,
//! the affine gauge action, horizontal/vertical splits, and the numerical
//! affine-submersion check.

mod affine;
mod gauge;
mod solver;

pub use affine::{check_affine_submersion, AffineSubmersionReport};
pub use gauge::{
    differential_phin_at_0, gauge_action, vertical_horizontal_split_at_0, GaugedPath,
};
pub use solver::{
    solve_frame, solve_transport, AffineCombo, ConjugatedConstant, PathEval, SolverConfig,
    SolverMethod, TransportResult,
};
