//! The affine gauge action `g * u = Ad(g) u - g' g^{-1}` and the
//! horizontal/vertical structure of the transport map at the zero path.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lie::{CatalogEntry, ReductivePair};
use crate::paths::{FourierPath, GroupPath, QuadratureGrid};
use crate::scalar::Real;

/// Gauge action of a sampled group path on a Fourier path, projected back to
/// truncation `n_out`.
///
/// Pointwise: `Ad(g(t)) u(t) - g'(t) g(t)^{-1}` with `g'` by fourth-order
/// finite differences on the sample grid; both `g` and `g'` are interpolated
/// to the quadrature nodes of the projection.
pub fn gauge_action<T: Real>(
    entry: &CatalogEntry<T>,
    g: &GroupPath<T>,
    u: &FourierPath<T>,
    n_out: usize,
) -> Result<FourierPath<T>> {
    let alg = entry.pair.algebra();
    if u.dim() != alg.dim() {
        return Err(Error::input("path dimension does not match the algebra"));
    }
    let m = g.grid_size();
    if m < 8 * (n_out + 1) {
        return Err(Error::input(format!(
            "group path grid too coarse: {m} intervals for output truncation {n_out} (need {})",
            8 * (n_out + 1)
        )));
    }
    let grid = QuadratureGrid::for_truncation(n_out);
    let deriv = g.derivative_nodes();
    let mut samples = Vec::with_capacity(grid.nodes().len());
    for &t in grid.nodes() {
        let gt = g.value(t);
        let gpt = crate::paths::group_path_interpolate(&deriv, t);
        let g_inv = gt
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::numerical("group path value not invertible"))?;
        let ad = alg.adjoint_of(&gt)?;
        let log_deriv = alg.coords_of(&(gpt * &g_inv))?;
        samples.push(ad * u.evaluate_unchecked(t) - log_deriv);
    }
    FourierPath::project_to_truncation(&grid, &samples, n_out)
}

/// The gauge-acted path `t -> Ad(g(t)) u(t) - g'(t) g(t)^{-1}` as a pointwise
/// evaluator (no Fourier truncation), for feeding the transport solver in
/// equivariance checks.
pub struct GaugedPath<'a, T: Real> {
    alg: &'a crate::lie::LieAlgebraBasis<T>,
    g: &'a GroupPath<T>,
    g_deriv: Vec<nalgebra::DMatrix<T>>,
    u: &'a FourierPath<T>,
}

impl<'a, T: Real> GaugedPath<'a, T> {
    pub fn new(
        alg: &'a crate::lie::LieAlgebraBasis<T>,
        g: &'a GroupPath<T>,
        u: &'a FourierPath<T>,
    ) -> Self {
        GaugedPath {
            alg,
            g,
            g_deriv: g.derivative_nodes(),
            u,
        }
    }
}

impl<'a, T: Real> crate::transport::PathEval<T> for GaugedPath<'a, T> {
    fn dim(&self) -> usize {
        self.alg.dim()
    }
    fn eval(&self, t: T) -> DVector<T> {
        let gt = self.g.value(t);
        let gpt = crate::paths::group_path_interpolate(&self.g_deriv, t);
        let g_inv = gt.clone().try_inverse().expect("group path invertible");
        let ad = self.alg.adjoint_of(&gt).expect("group path in the group");
        let log_deriv = self
            .alg
            .coords_of(&(gpt * &g_inv))
            .expect("log derivative in the algebra");
        ad * self.u.evaluate_unchecked(t) - log_deriv
    }
}

/// `(d Phi_N)_0(X) = proj_p integral X` — the p-part of the mean.
pub fn differential_phin_at_0<T: Real>(
    pair: &ReductivePair<T>,
    x: &FourierPath<T>,
) -> Result<DVector<T>> {
    if x.dim() != pair.dim() {
        return Err(Error::input("path dimension does not match the algebra"));
    }
    Ok(pair.proj_p() * x.integral_01())
}

/// Splits a tangent path at the zero path into its horizontal part (constant
/// p-path, returned in g-coordinates) and the vertical remainder.
pub fn vertical_horizontal_split_at_0<T: Real>(
    pair: &ReductivePair<T>,
    x: &FourierPath<T>,
) -> Result<(DVector<T>, FourierPath<T>)> {
    let horizontal = pair.proj_p() * x.a0();
    let vertical = x.sub(&FourierPath::constant(horizontal.clone()))?;
    Ok((horizontal, vertical))
}
