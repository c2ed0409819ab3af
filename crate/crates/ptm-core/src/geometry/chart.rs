//! Exponential chart of the coset space near the origin: `w -> exp(w) K`.
//!
//! Chart coordinates are coordinates with respect to the p-basis of the pair
//! (length dim p); the inverse chart solves `exp(w) k = g` by Newton iteration
//! on the p/k split of the matrix logarithm.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::lie::expm::{matrix_exp, matrix_log};
use crate::lie::ReductivePair;
use crate::scalar::{r, Real};
use crate::tol::Tolerances;

#[derive(Debug, Clone)]
pub struct Chart<T: Real> {
    pair: ReductivePair<T>,
    radius: T,
    tol: Tolerances,
}

impl<T: Real> Chart<T> {
    pub fn new(pair: ReductivePair<T>, radius: f64) -> Self {
        Chart {
            pair,
            radius: r(radius),
            tol: Tolerances::default(),
        }
    }

    pub fn pair(&self) -> &ReductivePair<T> {
        &self.pair
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    /// Gram norm of a chart vector (through its g-coordinates).
    pub fn chart_norm(&self, w: &DVector<T>) -> T {
        let v = self.pair.chart_to_alg(w);
        self.pair.algebra().norm(&v)
    }

    /// The coset representative `exp(w)` of the chart point `w`.
    pub fn chart_to_manifold(&self, w: &DVector<T>) -> Result<DMatrix<T>> {
        if w.len() != self.pair.dim_p() {
            return Err(Error::input("chart vector has wrong length"));
        }
        if self.chart_norm(w) > self.radius * r(1.0 + 1e-9) {
            return Err(Error::domain("chart point outside the injectivity ball"));
        }
        let v = self.pair.chart_to_alg(w);
        Ok(matrix_exp(&self.pair.algebra().matrix_of(&v)))
    }

    /// Residual function of the coset solve: the p-part of
    /// `log(exp(-w) g)` in chart coordinates.
    fn residual(&self, w: &DVector<T>, g: &DMatrix<T>) -> Result<DVector<T>> {
        let alg = self.pair.algebra();
        let wm = alg.matrix_of(&self.pair.chart_to_alg(w));
        let arg = matrix_exp(&(-wm)) * g;
        let lg = matrix_log(&arg)?;
        let coords = alg.coords_of(&lg)?;
        let p_part = self.pair.proj_p() * coords;
        self.pair.alg_to_chart(&p_part)
    }

    /// The unique `w` in the chart ball with `exp(w) K = g K`.
    ///
    /// Newton iteration with a finite-difference Jacobian; the residual is
    /// driven to near machine precision so chart derivatives stay quiet.
    pub fn manifold_to_chart(&self, g: &DMatrix<T>) -> Result<DVector<T>> {
        let alg = self.pair.algebra();
        let dim_p = self.pair.dim_p();
        // initial guess: p-part of log g
        let lg = matrix_log(g).map_err(|_| {
            Error::domain("coset is outside the chart image (log does not converge)")
        })?;
        let coords = alg.coords_of(&lg)?;
        let mut w = self.pair.alg_to_chart(&(self.pair.proj_p() * coords))?;

        let target = r::<T>(self.tol.newton_residual);
        let fd = r::<T>(self.tol.fd_step_chart);
        let mut best = T::max_value().unwrap_or_else(T::one);
        for _ in 0..self.tol.newton_max_iter {
            let f = self.residual(&w, g)?;
            let fnorm = f.norm();
            if fnorm < target {
                break;
            }
            if fnorm >= best * r(0.9999) && fnorm < r::<T>(1e-11) {
                // stalled at roundoff level: good enough
                break;
            }
            best = best.min(fnorm);
            // finite-difference Jacobian
            let mut jac = DMatrix::<T>::zeros(dim_p, dim_p);
            for j in 0..dim_p {
                let mut wp = w.clone();
                let mut wm = w.clone();
                wp[j] += fd;
                wm[j] -= fd;
                let col = (self.residual(&wp, g)? - self.residual(&wm, g)?) / (fd * r(2.0));
                jac.set_column(j, &col);
            }
            let delta = jac
                .lu()
                .solve(&f)
                .ok_or_else(|| Error::numerical("singular Jacobian in the coset solve"))?;
            w -= delta;
        }
        let f = self.residual(&w, g)?;
        if f.norm() > r(1e-10) {
            return Err(Error::numerical(format!(
                "coset Newton solve did not converge (residual {:?})",
                f.norm()
            )));
        }
        if self.chart_norm(&w) > self.radius * r(1.0 + 1e-6) {
            return Err(Error::domain("coset lies outside the chart ball"));
        }
        Ok(w)
    }
}
