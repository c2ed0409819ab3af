//! Centralized tolerance configuration.
//!
//! Every validation threshold used by the library and the verification suite
//! lives here, so the acceptance checks and the unit tests reference one
//! source of truth. Values are stated for f64 working precision.

/// Tolerance configuration record. `Tolerances::default()` is the set the
/// verification suite is specified against.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Antisymmetry / Jacobi identity of structure constants.
    pub structure: f64,
    /// Agreement between structure constants and matrix commutators.
    pub commutator: f64,
    /// Reductive decomposition checks ([k,k] in k, [k,p] in p, projections).
    pub reductive: f64,
    /// Group defining relations (orthogonality, unit determinant).
    pub group_relations: f64,
    /// Ad(exp X) vs exp(ad X), and sampled Ad(K)-invariance of p.
    pub adjoint: f64,
    /// exp/log mutual inversion near the identity.
    pub exp_log_roundtrip: f64,
    /// dexp validated against central finite differences.
    pub dexp_fd: f64,
    /// Truncation threshold for the dexp / dexp-inverse style series.
    pub series_term: f64,
    /// Chart round trip error on the injectivity ball.
    pub chart_roundtrip: f64,
    /// Residual target for the coset-chart Newton solve (driven well below
    /// the contractual 1e-10 so finite differences across the chart stay quiet).
    pub newton_residual: f64,
    /// Iteration cap for the coset-chart Newton solve.
    pub newton_max_iter: usize,
    /// Step for first-derivative finite differences on chart maps.
    pub fd_step_chart: f64,
    /// Step for frame-coefficient directional derivatives (Richardson once).
    pub fd_step_frame: f64,
    /// Torsion-free and geodesic residuals at the origin.
    pub connection_residual: f64,
    /// Orbit subalgebra and equivariance conditions.
    pub orbit_subalgebra: f64,
    pub orbit_equivariance: f64,
    /// Exactness of Fourier projection on trigonometric polynomials.
    pub projection_exact: f64,
    /// Parseval formula vs composite quadrature.
    pub parseval: f64,
    /// Allowed negative slack in the L2 inequality.
    pub l2_ineq_slack: f64,
    /// Transport endpoint error on constant paths (1024 steps).
    pub transport_const: f64,
    /// Gauge equivariance of the transport map.
    pub equivariance: f64,
    /// Minimum observed convergence order for the transport solvers.
    pub order_min: f64,
    /// Agreement of the analytic differential with finite differences.
    pub differential_fd: f64,
    /// Affine submersion residual (natural connection) and its outer step.
    pub affine_residual: f64,
    pub affine_outer_step: f64,
    /// Lower bound for the canonical-connection negative control.
    pub affine_negative_control: f64,
    /// Dual-route shape operator assembly agreement.
    pub dual_route: f64,
    /// Vertical diagonal entries of fiber operators.
    pub zero_diagonal: f64,
    /// Eigenvalue grouping and austere matching (relative).
    pub eigen_grouping: f64,
    /// |Re lambda| below this joins neither the mu nor the nu list.
    pub real_part_zero: f64,
    /// Regularized trace I of fiber operators.
    pub trace_i_zero: f64,
    /// Allowed negative slack in the mode-block norm bound.
    pub block_norm_slack: f64,
    /// Window around -1 for the block-norm decay exponent.
    pub decay_exponent_window: f64,
    /// Max-modulus eigenvalue drift between N=12 and N=16.
    pub lambda_max_cauchy: f64,
    /// Latitude-orbit trace anchor vs the classical value.
    pub orbit_trace_anchor: f64,
    /// N-independence of the orbit trace, and the degenerate-orbit match.
    pub orbit_trace_n_indep: f64,
    /// Well-definedness of orbit representatives.
    pub orbit_rep_consistency: f64,
    /// Linearity of the assembly in the transversal direction.
    pub linearity: f64,
    /// Trace II invariance under block-respecting basis changes.
    pub basis_invariance: f64,
    /// Norm blow-up guard inside the ODE solvers.
    pub blowup: f64,
    /// Continuity guard constant for sampled group paths.
    pub group_path_continuity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structure: 1e-12,
            commutator: 1e-12,
            reductive: 1e-12,
            group_relations: 1e-10,
            adjoint: 1e-8,
            exp_log_roundtrip: 1e-10,
            dexp_fd: 1e-8,
            series_term: 1e-14,
            chart_roundtrip: 1e-9,
            newton_residual: 1e-13,
            newton_max_iter: 50,
            fd_step_chart: 1e-6,
            fd_step_frame: 1e-5,
            connection_residual: 1e-6,
            orbit_subalgebra: 1e-12,
            orbit_equivariance: 1e-10,
            projection_exact: 1e-10,
            parseval: 1e-10,
            l2_ineq_slack: -1e-12,
            transport_const: 1e-10,
            equivariance: 1e-7,
            order_min: 3.7,
            differential_fd: 1e-6,
            affine_residual: 1e-6,
            affine_outer_step: 1e-4,
            affine_negative_control: 1e-3,
            dual_route: 1e-12,
            zero_diagonal: 1e-14,
            eigen_grouping: 1e-8,
            real_part_zero: 1e-12,
            trace_i_zero: 1e-10,
            block_norm_slack: -1e-10,
            decay_exponent_window: 0.05,
            lambda_max_cauchy: 1e-6,
            orbit_trace_anchor: 1e-4,
            orbit_trace_n_indep: 1e-13,
            orbit_rep_consistency: 1e-9,
            linearity: 1e-13,
            basis_invariance: 1e-10,
            blowup: 1e6,
            group_path_continuity: 50.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_sane() {
        let t = Tolerances::default();
        assert!(t.structure > 0.0 && t.structure < t.adjoint);
        assert!(t.l2_ineq_slack < 0.0 && t.block_norm_slack < 0.0);
        assert!(t.newton_max_iter >= 50);
        assert!(t.order_min > 3.0);
    }
}
