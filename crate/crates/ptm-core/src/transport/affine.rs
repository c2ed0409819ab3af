//! Numerical check of the affine-submersion property: the horizontal part of
//! the flat derivative of a horizontal lift along constant-path rays must
//! reproduce the covariant derivative downstairs.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{covariant_derivative_at_origin, Chart, VectorFieldOnChart};
use crate::lie::expm::matrix_exp;
use crate::lie::{CatalogEntry, ConnectionKind};
use crate::paths::{FourierPath, QuadratureGrid};
use crate::scalar::{r, Real};
use crate::transport::solver::{
    solve_frame, solve_transport, AffineCombo, ConjugatedConstant, SolverConfig,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineSubmersionReport {
    /// |(D_X Zhat)^H - nabla_X Z| in chart coordinates.
    pub residual: f64,
    pub lift_derivative: Vec<f64>,
    pub covariant_derivative: Vec<f64>,
}

/// Compares the horizontal projection of the flat derivative of the
/// horizontal lift of `z` along the ray `s -> s X^` against the covariant
/// derivative of `z` at the origin for the selected connection.
///
/// The lift at `u_s = s X^` is the unique element of `Ad(g_s) p^` that maps
/// to `z` under the finite-difference differential of the transport map; its
/// horizontal component is integrated by quadrature and differentiated in
/// `s` by central differences with step `h`.
pub fn check_affine_submersion<T: Real>(
    entry: &CatalogEntry<T>,
    kind: ConnectionKind,
    x: &DVector<T>,
    z: &dyn VectorFieldOnChart<T>,
    h: f64,
    cfg: &SolverConfig<T>,
) -> Result<AffineSubmersionReport> {
    let pair = &entry.pair;
    let dim_p = pair.dim_p();
    if x.len() != dim_p {
        return Err(Error::input("x must be a chart vector"));
    }
    let chart = Chart::new(pair.clone(), entry.chart_radius);
    let hs = r::<T>(h);

    let hor_plus = horizontal_of_lift(entry, &chart, x, z, hs, cfg)?;
    let hor_minus = horizontal_of_lift(entry, &chart, x, z, -hs, cfg)?;
    let lhs = (hor_plus - hor_minus) / (hs * r(2.0));

    let rhs = covariant_derivative_at_origin(&chart, kind, x, z)?;

    Ok(AffineSubmersionReport {
        residual: to_f64((lhs.clone() - &rhs).norm()),
        lift_derivative: lhs.iter().map(|&v| to_f64(v)).collect(),
        covariant_derivative: rhs.iter().map(|&v| to_f64(v)).collect(),
    })
}

/// Chart coordinates of the horizontal component of the lift of `z` at the
/// path `s X^`.
fn horizontal_of_lift<T: Real>(
    entry: &CatalogEntry<T>,
    chart: &Chart<T>,
    x: &DVector<T>,
    z: &dyn VectorFieldOnChart<T>,
    s: T,
    cfg: &SolverConfig<T>,
) -> Result<DVector<T>> {
    let pair = &entry.pair;
    let alg = pair.algebra();
    let dim_p = pair.dim_p();
    let x_alg = pair.chart_to_alg(x);
    let u_s = FourierPath::constant(&x_alg * s);

    // frame element with u_s = g_s * 0^ and g_s(1) = e
    let g_s = solve_frame(entry, &u_s, cfg)?;

    // base point and the field value there
    let base = matrix_exp(&alg.matrix_of(&(&x_alg * s)));
    let w_s = chart.manifold_to_chart(&base).map_err(|e| {
        Error::domain(format!("chart exit along the ray segment: {e}"))
    })?;
    let z_s = z.eval(&w_s);

    // finite-difference differential of the transport map restricted to the
    // horizontal space Ad(g_s) p^
    let eps = r::<T>(1e-4);
    let mut dmat = DMatrix::<T>::zeros(dim_p, dim_p);
    for (j, y) in pair.p_basis().iter().enumerate() {
        let dir = ConjugatedConstant {
            alg,
            path: &g_s,
            y: y.clone(),
        };
        let plus = AffineCombo {
            base: &u_s,
            pert: &dir,
            scale: eps,
        };
        let minus = AffineCombo {
            base: &u_s,
            pert: &dir,
            scale: -eps,
        };
        let wp = chart.manifold_to_chart(&solve_transport(entry, &plus, cfg)?.endpoint.matrix)?;
        let wm = chart.manifold_to_chart(&solve_transport(entry, &minus, cfg)?.endpoint.matrix)?;
        let col = (wp - wm) / (eps * r(2.0));
        dmat.set_column(j, &col);
    }
    let y_coeff = dmat
        .lu()
        .solve(&z_s)
        .ok_or_else(|| Error::numerical("lift differential is singular"))?;

    // mean of Ad(g_s(t)) over [0, 1] by quadrature (smooth integrand)
    let grid = QuadratureGrid::<T>::new(16);
    let dim = pair.dim();
    let mut mean = DMatrix::<T>::zeros(dim, dim);
    for (&t, &w) in grid.nodes().iter().zip(grid.weights()) {
        let ad = alg.adjoint_of(&g_s.value(t))?;
        mean += ad * w;
    }
    let mut y_alg = DVector::<T>::zeros(dim);
    for (j, y) in pair.p_basis().iter().enumerate() {
        y_alg += y * y_coeff[j];
    }
    let hor = pair.proj_p() * (mean * y_alg);
    pair.alg_to_chart(&hor)
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_subset().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::transport::SolverMethod;

    fn linear_field(dim_p: usize, seed: u64) -> impl Fn(&DVector<f64>) -> DVector<f64> + Sync {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = DMatrix::<f64>::from_fn(dim_p, dim_p, |_, _| rng.gen_range(-0.5..0.5));
        let b = DVector::<f64>::from_fn(dim_p, |_, _| rng.gen_range(-0.5..0.5));
        move |w: &DVector<f64>| &a * w + &b
    }

    #[test]
    fn abelian_case_is_exact() {
        let entry = catalog::load::<f64>("abelian2").unwrap();
        let z = linear_field(2, 5);
        let x = DVector::from_vec(vec![0.6, -0.3]);
        let cfg = SolverConfig::new(256, SolverMethod::Rkmk4, 1e-7).unwrap();
        for kind in [ConnectionKind::Canonical, ConnectionKind::NaturalTorsionFree] {
            let rep = check_affine_submersion(&entry, kind, &x, &z, 1e-4, &cfg).unwrap();
            assert!(rep.residual < 1e-9, "{kind:?}: {}", rep.residual);
        }
    }

    #[test]
    fn su2_natural_connection_satisfies_identity() {
        let entry = catalog::load::<f64>("su2").unwrap();
        let z = linear_field(2, 9);
        let x = DVector::from_vec(vec![0.6, -0.4]);
        let cfg = SolverConfig::new(256, SolverMethod::Rkmk4, 1e-7).unwrap();
        let rep = check_affine_submersion(
            &entry,
            ConnectionKind::NaturalTorsionFree,
            &x,
            &z,
            1e-4,
            &cfg,
        )
        .unwrap();
        assert!(rep.residual < 1e-6, "residual {}", rep.residual);
    }

    #[test]
    fn su3_canonical_connection_is_detected() {
        // on the non-symmetric flag manifold the canonical and natural
        // connections differ; frame fields separate them cleanly.
        let entry = catalog::load::<f64>("su3").unwrap();
        let chart = Chart::new(entry.pair.clone(), entry.chart_radius);
        let mut y = DVector::zeros(6);
        y[2] = 1.0;
        let chart2 = chart.clone();
        let z = move |w: &DVector<f64>| {
            crate::geometry::frame_sharp_dexp(&chart2, &y, w).unwrap()
        };
        let mut x = DVector::zeros(6);
        x[0] = 1.0;
        let cfg = SolverConfig::new(192, SolverMethod::Rkmk4, 1e-7).unwrap();
        let natural = check_affine_submersion(
            &entry,
            ConnectionKind::NaturalTorsionFree,
            &x,
            &z,
            1e-4,
            &cfg,
        )
        .unwrap();
        let canonical =
            check_affine_submersion(&entry, ConnectionKind::Canonical, &x, &z, 1e-4, &cfg)
                .unwrap();
        assert!(natural.residual < 1e-6, "natural {}", natural.residual);
        assert!(canonical.residual > 1e-3, "canonical {}", canonical.residual);
    }
}
