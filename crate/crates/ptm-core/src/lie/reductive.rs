//! Reductive decompositions g = k (+) p, connection functions, and group
//! elements of the representation.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::algebra::LieAlgebraBasis;
use crate::lie::expm::matrix_exp;
use crate::scalar::{r, Real};
use crate::tol::Tolerances;

/// Invariant connection selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConnectionKind {
    /// alpha(X, Y) = 0.
    Canonical,
    /// alpha(X, Y) = [X, Y]_p / 2.
    NaturalTorsionFree,
}

impl std::str::FromStr for ConnectionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(ConnectionKind::Canonical),
            "natural-torsion-free" | "natural" => Ok(ConnectionKind::NaturalTorsionFree),
            other => Err(Error::input(format!("unknown connection kind '{other}'"))),
        }
    }
}

/// Defining relations of the catalog groups, used for membership checks and
/// for the re-projection step of the classical integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupRelations {
    None,
    /// g^T g = I (covers the realified unitary groups as well).
    Orthogonal,
    /// det g = 1.
    SpecialLinear,
}

impl GroupRelations {
    /// Max violation of the defining relations.
    pub fn violation<T: Real>(&self, g: &DMatrix<T>) -> T {
        match self {
            GroupRelations::None => T::zero(),
            GroupRelations::Orthogonal => {
                let n = g.nrows();
                (g.transpose() * g - DMatrix::<T>::identity(n, n)).norm()
            }
            GroupRelations::SpecialLinear => (g.determinant() - T::one()).abs(),
        }
    }

    /// Projects a near-group matrix back onto the defining relations.
    pub fn project<T: Real>(&self, g: DMatrix<T>) -> DMatrix<T> {
        match self {
            GroupRelations::None => g,
            GroupRelations::Orthogonal => {
                // polar factor via SVD: closest orthogonal matrix
                let svd = g.svd(true, true);
                let u = svd.u.expect("svd requested U");
                let vt = svd.v_t.expect("svd requested V^T");
                u * vt
            }
            GroupRelations::SpecialLinear => {
                let n = g.nrows() as i32;
                let det = g.determinant();
                let scale = det.abs().powf(-T::one() / crate::scalar::ru::<T>(n as usize));
                g * scale
            }
        }
    }
}

/// Invertible element of the matrix group, in the same representation as the
/// algebra basis.
#[derive(Debug, Clone)]
pub struct GroupElement<T: Real> {
    pub matrix: DMatrix<T>,
}

impl<T: Real> GroupElement<T> {
    pub fn new(matrix: DMatrix<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::input("group element must be square"));
        }
        if matrix.clone().lu().try_inverse().is_none() {
            return Err(Error::input("group element is singular"));
        }
        Ok(GroupElement { matrix })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn inverse(&self) -> GroupElement<T> {
        GroupElement {
            matrix: self
                .matrix
                .clone()
                .try_inverse()
                .expect("group element invertible by construction"),
        }
    }
}

/// Reductive pair: algebra plus a decomposition g = k (+) p with
/// [k, p] contained in p.
#[derive(Debug, Clone)]
pub struct ReductivePair<T: Real> {
    algebra: LieAlgebraBasis<T>,
    k_basis: Vec<DVector<T>>,
    p_basis: Vec<DVector<T>>,
    /// dim x dim_k / dim x dim_p column matrices of the sub-bases.
    k_mat: DMatrix<T>,
    p_mat: DMatrix<T>,
    proj_k: DMatrix<T>,
    proj_p: DMatrix<T>,
}

impl<T: Real> ReductivePair<T> {
    /// Split along coordinate indices (the catalog case).
    pub fn from_indices(algebra: LieAlgebraBasis<T>, k_indices: &[usize]) -> Result<Self> {
        let dim = algebra.dim();
        let mut is_k = vec![false; dim];
        for &i in k_indices {
            if i >= dim {
                return Err(Error::input("k index out of range"));
            }
            is_k[i] = true;
        }
        let unit = |i: usize| {
            let mut v = DVector::zeros(dim);
            v[i] = T::one();
            v
        };
        let k_basis: Vec<_> = (0..dim).filter(|&i| is_k[i]).map(unit).collect();
        let p_basis: Vec<_> = (0..dim).filter(|&i| !is_k[i]).map(unit).collect();
        Self::from_bases(algebra, k_basis, p_basis)
    }

    /// General split from explicit coordinate bases of k and p.
    pub fn from_bases(
        algebra: LieAlgebraBasis<T>,
        k_basis: Vec<DVector<T>>,
        p_basis: Vec<DVector<T>>,
    ) -> Result<Self> {
        let dim = algebra.dim();
        if k_basis.len() + p_basis.len() != dim {
            return Err(Error::input("k and p bases must span g"));
        }
        let dim_k = k_basis.len();
        let dim_p = p_basis.len();
        let mut full = DMatrix::<T>::zeros(dim, dim);
        let mut k_mat = DMatrix::<T>::zeros(dim, dim_k);
        let mut p_mat = DMatrix::<T>::zeros(dim, dim_p);
        for (j, v) in k_basis.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::input("k basis vector has wrong length"));
            }
            full.set_column(j, v);
            k_mat.set_column(j, v);
        }
        for (j, v) in p_basis.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::input("p basis vector has wrong length"));
            }
            full.set_column(dim_k + j, v);
            p_mat.set_column(j, v);
        }
        let inv = full
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::input("k + p bases do not span g"))?;
        let top = inv.rows(0, dim_k).into_owned();
        let bottom = inv.rows(dim_k, dim_p).into_owned();
        let proj_k = &k_mat * top;
        let proj_p = &p_mat * bottom;

        let pair = ReductivePair {
            algebra,
            k_basis,
            p_basis,
            k_mat,
            p_mat,
            proj_k,
            proj_p,
        };
        let report = pair.validate();
        if !report.is_reductive(&Tolerances::default()) {
            return Err(Error::input(format!(
                "decomposition is not reductive: {report:?}"
            )));
        }
        Ok(pair)
    }

    pub fn algebra(&self) -> &LieAlgebraBasis<T> {
        &self.algebra
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn dim_k(&self) -> usize {
        self.k_basis.len()
    }
    pub fn dim_p(&self) -> usize {
        self.p_basis.len()
    }
    pub fn k_basis(&self) -> &[DVector<T>] {
        &self.k_basis
    }
    pub fn p_basis(&self) -> &[DVector<T>] {
        &self.p_basis
    }
    pub fn proj_k(&self) -> &DMatrix<T> {
        &self.proj_k
    }
    pub fn proj_p(&self) -> &DMatrix<T> {
        &self.proj_p
    }

    /// g-coordinates of a chart vector (coordinates w.r.t. the p basis).
    pub fn chart_to_alg(&self, w: &DVector<T>) -> DVector<T> {
        &self.p_mat * w
    }

    /// Chart coordinates of a g-vector lying in p.
    pub fn alg_to_chart(&self, v: &DVector<T>) -> Result<DVector<T>> {
        let k_part = (&self.proj_k * v).norm();
        let scale = T::one().max(v.norm());
        if k_part > r::<T>(1e-9) * scale {
            return Err(Error::input(format!(
                "vector is not in p (k-component {k_part:?})"
            )));
        }
        // p_mat has full column rank; solve the least-squares system exactly.
        let ptp = self.p_mat.transpose() * &self.p_mat;
        let rhs = self.p_mat.transpose() * v;
        ptp.lu()
            .solve(&rhs)
            .ok_or_else(|| Error::numerical("p basis solve failed"))
    }

    fn in_p(&self, v: &DVector<T>, tol: T) -> bool {
        (&self.proj_k * v).norm() <= tol * T::one().max(v.norm())
    }

    /// Coordinates of the k-component of a g-vector with respect to the
    /// k basis.
    pub fn k_coords(&self, v: &DVector<T>) -> Result<DVector<T>> {
        if self.dim_k() == 0 {
            return Ok(DVector::zeros(0));
        }
        let kv = &self.proj_k * v;
        let ktk = self.k_mat.transpose() * &self.k_mat;
        let rhs = self.k_mat.transpose() * kv;
        ktk.lu()
            .solve(&rhs)
            .ok_or_else(|| Error::numerical("k basis solve failed"))
    }

    /// Connection function alpha: p x p -> p for the selected connection.
    ///
    /// Inputs and output are g-coordinate vectors lying in p.
    pub fn alpha(&self, kind: ConnectionKind, x: &DVector<T>, y: &DVector<T>) -> Result<DVector<T>> {
        let tol = r::<T>(Tolerances::default().reductive);
        if !self.in_p(x, tol) || !self.in_p(y, tol) {
            return Err(Error::input("alpha: inputs must lie in p"));
        }
        match kind {
            ConnectionKind::Canonical => Ok(DVector::zeros(self.dim())),
            ConnectionKind::NaturalTorsionFree => {
                let br = self.algebra.bracket(x, y)?;
                Ok(&self.proj_p * br * r::<T>(0.5))
            }
        }
    }

    /// Covariant derivative on the group seen as a symmetric space:
    /// `nabla_X Y = [X, Y] / 2`.
    pub fn nabla_bi_invariant(&self, x: &DVector<T>, y: &DVector<T>) -> Result<DVector<T>> {
        Ok(self.algebra.bracket(x, y)? * r::<T>(0.5))
    }

    /// Fundamental tensor of the coset projection: `A^pi(X, Y) = [X, Y]_k / 2`.
    pub fn fundamental_tensor_pi(&self, x: &DVector<T>, y: &DVector<T>) -> Result<DVector<T>> {
        let tol = r::<T>(Tolerances::default().reductive);
        if !self.in_p(x, tol) || !self.in_p(y, tol) {
            return Err(Error::input("fundamental_tensor_pi: inputs must lie in p"));
        }
        let br = self.algebra.bracket(x, y)?;
        Ok(&self.proj_k * br * r::<T>(0.5))
    }

    /// Structural validation report for the decomposition.
    pub fn validate(&self) -> ReductiveReport {
        let dim = self.dim();
        let mut kk = 0.0f64;
        let mut kp = 0.0f64;
        for a in &self.k_basis {
            for b in &self.k_basis {
                let br = self.algebra.bracket(a, b).expect("validated dims");
                let viol: T = (&self.proj_p * &br).norm();
                kk = kk.max(to_f64(viol));
            }
            for b in &self.p_basis {
                let br = self.algebra.bracket(a, b).expect("validated dims");
                let viol: T = (&self.proj_k * &br).norm();
                kp = kp.max(to_f64(viol));
            }
        }
        let idem_k = to_f64((&self.proj_k * &self.proj_k - &self.proj_k).norm());
        let idem_p = to_f64((&self.proj_p * &self.proj_p - &self.proj_p).norm());
        let cross = to_f64((&self.proj_k * &self.proj_p).norm());
        let sum = to_f64((&self.proj_k + &self.proj_p - DMatrix::<T>::identity(dim, dim)).norm());

        // Finite-group-element invariance: Ad(exp(t x)) p subset p for
        // sampled x in k.
        let mut ad_inv = 0.0f64;
        for x in &self.k_basis {
            let xm = self.algebra.matrix_of(x);
            for &t in &[0.1, 0.5, 1.0] {
                let g = matrix_exp(&(&xm * r::<T>(t)));
                if let Ok(ad) = self.algebra.adjoint_of(&g) {
                    for p in &self.p_basis {
                        let image = &ad * p;
                        let viol: T = (&self.proj_k * image).norm();
                        ad_inv = ad_inv.max(to_f64(viol));
                    }
                }
            }
        }

        ReductiveReport {
            max_kk_violation: kk,
            max_kp_violation: kp,
            proj_idempotency: idem_k.max(idem_p),
            proj_cross: cross,
            proj_sum: sum,
            sampled_ad_invariance: ad_inv,
        }
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_subset().unwrap_or(f64::NAN)
}

/// Violation report from [`ReductivePair::validate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductiveReport {
    pub max_kk_violation: f64,
    pub max_kp_violation: f64,
    pub proj_idempotency: f64,
    pub proj_cross: f64,
    pub proj_sum: f64,
    pub sampled_ad_invariance: f64,
}

impl ReductiveReport {
    pub fn is_reductive(&self, tol: &Tolerances) -> bool {
        self.max_kk_violation <= tol.reductive
            && self.max_kp_violation <= tol.reductive
            && self.proj_idempotency <= tol.reductive
            && self.proj_cross <= tol.reductive
            && self.proj_sum <= tol.reductive
            && self.sampled_ad_invariance <= tol.adjoint
    }
}
