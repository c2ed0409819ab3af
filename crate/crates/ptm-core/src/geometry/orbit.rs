//! Orbit data: a subalgebra h generating the orbit M = H . eK, together with
//! a transversal complement W of T_eK M inside p.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::ReductivePair;
use crate::scalar::{r, Real};
use crate::tol::Tolerances;

#[derive(Debug, Clone)]
pub struct OrbitSpec<T: Real> {
    pair: ReductivePair<T>,
    h_basis: Vec<DVector<T>>,
    transversal_basis: Vec<DVector<T>>,
    /// Gram-orthonormal basis of T_eK M = proj_p(h).
    tangent_basis: Vec<DVector<T>>,
    /// For each tangent basis vector, a preimage X in h with X_p = tangent.
    tangent_preimages: Vec<DVector<T>>,
    /// Basis of the intersection h and k (the representative ambiguity).
    hk_basis: Vec<DVector<T>>,
}

impl<T: Real> OrbitSpec<T> {
    /// The trivial orbit (H = {e}): empty tangent, W = p. Its shape operator
    /// is the fiber operator.
    pub fn trivial(pair: ReductivePair<T>) -> Self {
        let transversal = pair.p_basis().to_vec();
        OrbitSpec {
            pair,
            h_basis: Vec::new(),
            transversal_basis: transversal,
            tangent_basis: Vec::new(),
            tangent_preimages: Vec::new(),
            hk_basis: Vec::new(),
        }
    }

    pub fn new(
        pair: ReductivePair<T>,
        h_basis: Vec<DVector<T>>,
        transversal_basis: Vec<DVector<T>>,
    ) -> Result<Self> {
        let tol = Tolerances::default();
        let alg = pair.algebra();
        let dim = pair.dim();
        for v in h_basis.iter().chain(&transversal_basis) {
            if v.len() != dim {
                return Err(Error::input("orbit basis vectors must be g-vectors"));
            }
        }
        for v in &transversal_basis {
            if (pair.proj_k() * v).norm() > r(1e-9) {
                return Err(Error::input("transversal basis must lie in p"));
            }
        }

        // h is a subalgebra: brackets stay in span(h).
        let h_mat = stack(&h_basis, dim);
        for a in &h_basis {
            for b in &h_basis {
                let br = alg.bracket(a, b)?;
                if residual_outside_span(&h_mat, &br) > r(tol.orbit_subalgebra) {
                    return Err(Error::input("h is not a subalgebra"));
                }
            }
        }

        // tangent space: Gram-orthonormalized projection of h into p.
        let mut tangent_basis: Vec<DVector<T>> = Vec::new();
        let mut tangent_preimages: Vec<DVector<T>> = Vec::new();
        for x in &h_basis {
            let mut v = pair.proj_p() * x;
            let mut pre = x.clone();
            for (t, p) in tangent_basis.iter().zip(&tangent_preimages) {
                let coeff = alg.inner(&v, t);
                v -= t * coeff;
                pre -= p * coeff;
            }
            let n = alg.norm(&v);
            if n > r(1e-9) {
                tangent_basis.push(&v / n);
                tangent_preimages.push(&pre / n);
            }
        }

        // tangent (+) W must fill p.
        let m = tangent_basis.len();
        if m + transversal_basis.len() != pair.dim_p() {
            return Err(Error::input(format!(
                "transversal has wrong dimension: tangent {} + transversal {} != dim p {}",
                m,
                transversal_basis.len(),
                pair.dim_p()
            )));
        }
        let mut stacked = Vec::with_capacity(pair.dim_p());
        stacked.extend(tangent_basis.iter().cloned());
        stacked.extend(transversal_basis.iter().cloned());
        let s = stack(&stacked, dim);
        let gram = s.transpose() * &s;
        if gram.cholesky().is_none() {
            return Err(Error::input(
                "tangent and transversal do not span p (stacked matrix rank-deficient)",
            ));
        }

        // h and k intersection: null space of proj_p restricted to h.
        let mut hk_basis = Vec::new();
        if !h_basis.is_empty() {
            let ph = pair.proj_p() * &h_mat;
            let svd = ph.svd(true, true);
            let v_t = svd.v_t.as_ref().expect("svd with V^T");
            let smax = svd.singular_values.iter().fold(T::zero(), |a, &b| a.max(b));
            let cut = r::<T>(1e-10) * T::one().max(smax);
            for (i, &s) in svd.singular_values.iter().enumerate() {
                if s <= cut {
                    let coeffs = v_t.row(i).transpose();
                    hk_basis.push(&h_mat * coeffs);
                }
            }
            // rows of V^T beyond the singular-value count are also null directions
            for i in svd.singular_values.len()..v_t.nrows() {
                let coeffs = v_t.row(i).transpose();
                hk_basis.push(&h_mat * coeffs);
            }
        }

        // equivariance: [h n k, W] stays inside span(W).
        let w_mat = stack(&transversal_basis, dim);
        for d in &hk_basis {
            for w in &transversal_basis {
                let br = alg.bracket(d, w)?;
                if residual_outside_span(&w_mat, &br) > r(tol.orbit_equivariance) {
                    return Err(Error::input(
                        "equivariance condition violated: [h n k, W] leaves W",
                    ));
                }
            }
        }

        Ok(OrbitSpec {
            pair,
            h_basis,
            transversal_basis,
            tangent_basis,
            tangent_preimages,
            hk_basis,
        })
    }

    pub fn pair(&self) -> &ReductivePair<T> {
        &self.pair
    }
    pub fn h_basis(&self) -> &[DVector<T>] {
        &self.h_basis
    }
    pub fn transversal_basis(&self) -> &[DVector<T>] {
        &self.transversal_basis
    }
    pub fn tangent_basis(&self) -> &[DVector<T>] {
        &self.tangent_basis
    }
    pub fn tangent_preimages(&self) -> &[DVector<T>] {
        &self.tangent_preimages
    }
    pub fn hk_basis(&self) -> &[DVector<T>] {
        &self.hk_basis
    }

    /// True if the direction (a g-vector) lies in the span of W.
    pub fn contains_transversal(&self, xi: &DVector<T>) -> bool {
        let w_mat = stack(&self.transversal_basis, self.pair.dim());
        residual_outside_span(&w_mat, xi) <= r(1e-9)
    }
}

fn stack<T: Real>(vs: &[DVector<T>], dim: usize) -> DMatrix<T> {
    let mut m = DMatrix::zeros(dim, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Least-squares residual of `v` against the column span of `m`
/// (relative to |v|; zero columns give |v| itself).
fn residual_outside_span<T: Real>(m: &DMatrix<T>, v: &DVector<T>) -> T {
    let scale = T::one().max(v.norm());
    if m.ncols() == 0 {
        return v.norm() / scale;
    }
    let mtm = m.transpose() * m;
    let rhs = m.transpose() * v;
    match mtm.lu().solve(&rhs) {
        Some(sol) => (m * sol - v).norm() / scale,
        None => v.norm() / scale,
    }
}

/// JSON wire form: `{"h_basis": [[...]], "transversal_basis": [[...]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitSpecJson {
    pub h_basis: Vec<Vec<f64>>,
    pub transversal_basis: Vec<Vec<f64>>,
}

impl OrbitSpecJson {
    pub fn build<T: Real>(&self, pair: ReductivePair<T>) -> Result<OrbitSpec<T>> {
        let conv = |rows: &[Vec<f64>]| {
            rows.iter()
                .map(|row| DVector::from_iterator(row.len(), row.iter().map(|&x| r::<T>(x))))
                .collect::<Vec<_>>()
        };
        OrbitSpec::new(pair, conv(&self.h_basis), conv(&self.transversal_basis))
    }
}

/// The latitude-circle orbit of the 2-sphere su2/u1 at geodesic distance
/// `r_dist` from its pole: h is the rotated isotropy algebra
/// span(sin(r) e2 + cos(r) e3), the transversal is span(e1).
pub fn su2_latitude_orbit<T: Real>(pair: ReductivePair<T>, r_dist: f64) -> Result<OrbitSpec<T>> {
    if pair.dim() != 3 {
        return Err(Error::input("latitude orbit needs the su2 pair"));
    }
    let h = DVector::from_vec(vec![
        T::zero(),
        r::<T>(r_dist.sin()),
        r::<T>(r_dist.cos()),
    ]);
    let w = DVector::from_vec(vec![T::one(), T::zero(), T::zero()]);
    OrbitSpec::new(pair, vec![h], vec![w])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    #[test]
    fn latitude_orbit_builds() {
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let orbit = su2_latitude_orbit(pair, 0.5).unwrap();
        assert_eq!(orbit.tangent_basis().len(), 1);
        // tangent is the normalized p-projection: e2
        let t = &orbit.tangent_basis()[0];
        assert!((t - DVector::from_vec(vec![0.0, 1.0, 0.0])).norm() < 1e-12);
        // preimage maps onto the tangent under proj_p
        let pre = &orbit.tangent_preimages()[0];
        assert!((orbit.pair().proj_p() * pre - t).norm() < 1e-12);
        assert!(orbit.hk_basis().is_empty());
        assert!(orbit.contains_transversal(&DVector::from_vec(vec![-1.0, 0.0, 0.0])));
    }

    #[test]
    fn trivial_orbit_spans_p() {
        let pair = catalog::load::<f64>("su3").unwrap().pair;
        let orbit = OrbitSpec::trivial(pair);
        assert_eq!(orbit.transversal_basis().len(), 6);
        assert!(orbit.tangent_basis().is_empty());
    }

    #[test]
    fn full_isotropy_orbit_has_hk_ambiguity() {
        // h = k (the isotropy): orbit is the single point eK, tangent empty,
        // W = p, and the ambiguity space is all of k.
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let h = vec![DVector::from_vec(vec![0.0, 0.0, 1.0])];
        let w = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
        ];
        let orbit = OrbitSpec::new(pair, h, w).unwrap();
        assert!(orbit.tangent_basis().is_empty());
        assert_eq!(orbit.hk_basis().len(), 1);
    }

    #[test]
    fn non_subalgebra_is_rejected() {
        // span(e1) + span(e2) is not closed: [e1, e2] = e3
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let h = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
        ];
        let res = OrbitSpec::new(pair, h, vec![]);
        assert!(res.is_err());
    }

    #[test]
    fn wrong_transversal_dimension_rejected() {
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let res = OrbitSpec::new(pair, vec![], vec![DVector::from_vec(vec![1.0, 0.0, 0.0])]);
        assert!(res.is_err());
    }
}
