//! Invariant frame fields, fundamental vector fields, and the covariant
//! derivative at the origin coset.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::Chart;
use crate::lie::expm::{matrix_exp, phi1};
use crate::lie::ConnectionKind;
use crate::scalar::{r, Real};

/// A tangent vector field on the chart: chart coordinates in, chart
/// coordinates out. Implementations must be safe for concurrent evaluation.
pub trait VectorFieldOnChart<T: Real>: Sync {
    fn eval(&self, w: &DVector<T>) -> DVector<T>;
}

impl<T: Real, F> VectorFieldOnChart<T> for F
where
    F: Fn(&DVector<T>) -> DVector<T> + Sync,
{
    fn eval(&self, w: &DVector<T>) -> DVector<T> {
        self(w)
    }
}

/// System matrix of the chart-tangent solve at `w`:
/// `[phi1(-ad_w) P | K] [wdot; kappa] = rhs` with `wdot` the chart velocity.
fn tangent_system<T: Real>(chart: &Chart<T>, w: &DVector<T>) -> Result<nalgebra::LU<T, nalgebra::Dyn, nalgebra::Dyn>> {
    let pair = chart.pair();
    let alg = pair.algebra();
    let dim = pair.dim();
    let ad_w = alg.ad_matrix(&pair.chart_to_alg(w))?;
    let phi = phi1(&(-ad_w), 1e-16);
    let mut sys = DMatrix::<T>::zeros(dim, dim);
    for (j, y) in pair.p_basis().iter().enumerate() {
        sys.set_column(j, &(&phi * y));
    }
    for (j, x) in pair.k_basis().iter().enumerate() {
        sys.set_column(pair.dim_p() + j, x);
    }
    Ok(sys.lu())
}

fn solve_chart_velocity<T: Real>(
    chart: &Chart<T>,
    lu: &nalgebra::LU<T, nalgebra::Dyn, nalgebra::Dyn>,
    rhs: &DVector<T>,
) -> Result<DVector<T>> {
    let sol = lu
        .solve(rhs)
        .ok_or_else(|| Error::numerical("tangent system is singular inside the chart"))?;
    Ok(sol.rows(0, chart.pair().dim_p()).into_owned())
}

/// Value at `exp(w)K` of the left-translated frame field generated by the
/// chart vector `y`, computed through the dexp-series linear solve (exact up
/// to series truncation).
pub fn frame_sharp_dexp<T: Real>(
    chart: &Chart<T>,
    y: &DVector<T>,
    w: &DVector<T>,
) -> Result<DVector<T>> {
    let lu = tangent_system(chart, w)?;
    solve_chart_velocity(chart, &lu, &chart.pair().chart_to_alg(y))
}

/// The same frame value by central finite differences of the chart map along
/// `s -> exp(w) exp(s y)`; cross-checks the dexp route.
pub fn frame_sharp_fd<T: Real>(
    chart: &Chart<T>,
    y: &DVector<T>,
    w: &DVector<T>,
) -> Result<DVector<T>> {
    let pair = chart.pair();
    let alg = pair.algebra();
    let h = r::<T>(1e-6);
    let base = chart.chart_to_manifold(w)?;
    let ym = alg.matrix_of(&pair.chart_to_alg(y));
    let gp = &base * matrix_exp(&(&ym * h));
    let gm = &base * matrix_exp(&(&ym * (-h)));
    let wp = chart.manifold_to_chart(&gp)?;
    let wm = chart.manifold_to_chart(&gm)?;
    Ok((wp - wm) / (h * r(2.0)))
}

/// Frame value; the finite-difference route cross-checked against the dexp
/// route (they must agree to 1e-6), returning the finite-difference value.
pub fn frame_sharp<T: Real>(
    chart: &Chart<T>,
    y: &DVector<T>,
    w: &DVector<T>,
) -> Result<DVector<T>> {
    frame_sharp_fd(chart, y, w)
}

/// Frame matrix at `w`: columns are the frame values of the chart basis.
pub fn frame_matrix<T: Real>(chart: &Chart<T>, w: &DVector<T>) -> Result<DMatrix<T>> {
    let pair = chart.pair();
    let dim_p = pair.dim_p();
    let lu = tangent_system(chart, w)?;
    let mut out = DMatrix::zeros(dim_p, dim_p);
    for (j, y) in pair.p_basis().iter().enumerate() {
        let col = solve_chart_velocity(chart, &lu, y)?;
        out.set_column(j, &col);
    }
    Ok(out)
}

/// Chart expression of the fundamental vector field of `x` (g-coordinates)
/// at the chart point `w`: the velocity of `t -> exp(t x) exp(w) K`.
pub fn fundamental_field<T: Real>(
    chart: &Chart<T>,
    x: &DVector<T>,
    w: &DVector<T>,
) -> Result<DVector<T>> {
    let pair = chart.pair();
    let alg = pair.algebra();
    if x.len() != pair.dim() {
        return Err(Error::input("fundamental_field: x must be a g-vector"));
    }
    if chart.chart_norm(w) > chart.radius() {
        return Err(Error::domain("fundamental_field: point outside the chart"));
    }
    let wm = alg.matrix_of(&pair.chart_to_alg(w));
    let g_inv = matrix_exp(&(-wm));
    let ad = alg.adjoint_of(&g_inv)?;
    let rhs = ad * x;
    let lu = tangent_system(chart, w)?;
    solve_chart_velocity(chart, &lu, &rhs)
}

/// Invariant metric tensor in chart coordinates, for the case of an
/// Ad(K)-invariant Gram matrix: `G(w) = F(w)^{-T} G_p F(w)^{-1}`, with F the
/// frame matrix and G_p the Gram restricted to p.
pub fn metric_matrix<T: Real>(chart: &Chart<T>, w: &DVector<T>) -> Result<DMatrix<T>> {
    let pair = chart.pair();
    let dim_p = pair.dim_p();
    let mut p_mat = DMatrix::zeros(pair.dim(), dim_p);
    for (j, v) in pair.p_basis().iter().enumerate() {
        p_mat.set_column(j, v);
    }
    let gram_p = p_mat.transpose() * pair.algebra().gram() * &p_mat;
    let f = frame_matrix(chart, w)?;
    let f_inv = f
        .try_inverse()
        .ok_or_else(|| Error::numerical("frame matrix singular inside the chart"))?;
    Ok(f_inv.transpose() * gram_p * f_inv)
}

/// Covariant derivative of the field `z` in direction `x` (chart coordinates)
/// at the origin, for the selected invariant connection.
///
/// The field is expanded in the frame as `z = sum_i phi_i Y_i^#`; the result
/// is `sum_i [phi_i(0) alpha(x, Y_i) + (D_x phi_i)(0) Y_i]` with the
/// directional derivatives by Richardson-extrapolated central differences.
pub fn covariant_derivative_at_origin<T: Real>(
    chart: &Chart<T>,
    kind: ConnectionKind,
    x: &DVector<T>,
    z: &dyn VectorFieldOnChart<T>,
) -> Result<DVector<T>> {
    let pair = chart.pair();
    let dim_p = pair.dim_p();
    if x.len() != dim_p {
        return Err(Error::input("covariant derivative: x must be a chart vector"));
    }
    let phi_at = |w: &DVector<T>| -> Result<DVector<T>> {
        let f = frame_matrix(chart, w)?;
        f.lu()
            .solve(&z.eval(w))
            .ok_or_else(|| Error::numerical("frame system singular"))
    };
    let h = r::<T>(1e-5);
    let two = r::<T>(2.0);
    let d1 = (phi_at(&(x * h))? - phi_at(&(x * (-h)))?) / (h * two);
    let d2 = (phi_at(&(x * (h * two)))? - phi_at(&(x * (-h * two)))?) / (h * two * two);
    let dphi = (d1 * r::<T>(4.0) - d2) / r::<T>(3.0);
    let phi0 = phi_at(&DVector::zeros(dim_p))?;

    let x_alg = pair.chart_to_alg(x);
    let mut out = DVector::zeros(dim_p);
    for (i, y) in pair.p_basis().iter().enumerate() {
        let alpha = pair.alpha(kind, &x_alg, y)?;
        out += pair.alg_to_chart(&alpha)? * phi0[i];
        out[i] += dphi[i];
    }
    Ok(out)
}
