//! Built-in algebra catalog and the JSON wire format for custom entries.
//!
//! Complex algebras (su(2), su(3)) are realized as real matrix algebras of
//! doubled size, so the whole library stays over the reals. The inner product
//! of every catalog entry is the basis-orthonormal one; spectra of shape
//! operators depend on this choice, the diagonal-sum identities do not.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::algebra::{matrix_from_rows, AlgebraJson, LieAlgebraBasis};
use crate::lie::reductive::{GroupRelations, ReductivePair};
use crate::scalar::{r, Real};

/// A ready-to-use catalog entry: reductive pair plus the data the geometry and
/// transport layers need (chart radius, group membership relations).
#[derive(Debug, Clone)]
pub struct CatalogEntry<T: Real> {
    pub name: String,
    pub pair: ReductivePair<T>,
    /// Radius of the ball in p on which the exponential chart is injective
    /// and the principal log converges; fixed conservatively per entry.
    pub chart_radius: f64,
    pub relations: GroupRelations,
    /// Whether the chosen Gram matrix is Ad-invariant (compact cases); the
    /// skewness property of ad is asserted only for flagged entries.
    pub ad_invariant: bool,
}

pub const CATALOG_NAMES: [&str; 5] = ["abelian2", "su2", "sl2r", "su3", "so3"];

/// Loads a catalog entry by name.
pub fn load<T: Real>(name: &str) -> Result<CatalogEntry<T>> {
    match name {
        "abelian2" => abelian2(),
        "su2" => su2(),
        "sl2r" => sl2r(),
        "su3" => su3(),
        "so3" => so3(),
        other => Err(Error::input(format!(
            "unknown catalog algebra '{other}' (known: {})",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn identity_gram<T: Real>(dim: usize) -> DMatrix<T> {
    DMatrix::identity(dim, dim)
}

/// Realification of a complex matrix A + iB as [[A, -B], [B, A]].
fn realify<T: Real>(re: &[[f64; 3]; 3], im: &[[f64; 3]; 3]) -> DMatrix<T> {
    let mut m = DMatrix::<T>::zeros(6, 6);
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = r(re[i][j]);
            m[(i, j + 3)] = r(-im[i][j]);
            m[(i + 3, j)] = r(im[i][j]);
            m[(i + 3, j + 3)] = r(re[i][j]);
        }
    }
    m
}

fn realify2<T: Real>(re: &[[f64; 2]; 2], im: &[[f64; 2]; 2]) -> DMatrix<T> {
    let mut m = DMatrix::<T>::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = r(re[i][j]);
            m[(i, j + 2)] = r(-im[i][j]);
            m[(i + 2, j)] = r(im[i][j]);
            m[(i + 2, j + 2)] = r(re[i][j]);
        }
    }
    m
}

fn abelian2<T: Real>() -> Result<CatalogEntry<T>> {
    let e1 = matrix_from_rows::<T>(&[vec![1.0, 0.0], vec![0.0, 0.0]])?;
    let e2 = matrix_from_rows::<T>(&[vec![0.0, 0.0], vec![0.0, 1.0]])?;
    let alg = LieAlgebraBasis::from_basis(vec![e1, e2], identity_gram(2))?;
    Ok(CatalogEntry {
        name: "abelian2".into(),
        pair: ReductivePair::from_indices(alg, &[])?,
        chart_radius: 0.6,
        relations: GroupRelations::None,
        ad_invariant: true,
    })
}

/// su(2) with the cyclic basis e_j = -(i/2) sigma_j, realified to 4x4.
/// [e1, e2] = e3 etc.; with the identity Gram the coset space su2/u1 is the
/// unit round 2-sphere (sectional curvature 1).
fn su2<T: Real>() -> Result<CatalogEntry<T>> {
    let z = [[0.0; 2]; 2];
    // -(i/2) sigma_1: purely imaginary part -sigma_1/2
    let e1 = realify2::<T>(&z, &[[0.0, -0.5], [-0.5, 0.0]]);
    // -(i/2) sigma_2 is real
    let e2 = realify2::<T>(&[[0.0, -0.5], [0.5, 0.0]], &z);
    // -(i/2) sigma_3
    let e3 = realify2::<T>(&z, &[[-0.5, 0.0], [0.0, 0.5]]);
    let alg = LieAlgebraBasis::from_basis(vec![e1, e2, e3], identity_gram(3))?;
    Ok(CatalogEntry {
        name: "su2".into(),
        pair: ReductivePair::from_indices(alg, &[2])?,
        chart_radius: 1.0,
        relations: GroupRelations::Orthogonal,
        ad_invariant: true,
    })
}

/// sl(2, R) with basis (J, S1, S2): J the rotation generator spanning
/// k = so(2), S1/S2 traceless symmetric.
fn sl2r<T: Real>() -> Result<CatalogEntry<T>> {
    let j = matrix_from_rows::<T>(&[vec![0.0, -1.0], vec![1.0, 0.0]])?;
    let s1 = matrix_from_rows::<T>(&[vec![1.0, 0.0], vec![0.0, -1.0]])?;
    let s2 = matrix_from_rows::<T>(&[vec![0.0, 1.0], vec![1.0, 0.0]])?;
    let alg = LieAlgebraBasis::from_basis(vec![j, s1, s2], identity_gram(3))?;
    Ok(CatalogEntry {
        name: "sl2r".into(),
        pair: ReductivePair::from_indices(alg, &[0])?,
        chart_radius: 0.6,
        relations: GroupRelations::SpecialLinear,
        ad_invariant: false,
    })
}

/// so(3) with the cyclic rotation generators.
fn so3<T: Real>() -> Result<CatalogEntry<T>> {
    let l1 = matrix_from_rows::<T>(&[
        vec![0.0, 0.0, 0.0],
        vec![0.0, 0.0, -1.0],
        vec![0.0, 1.0, 0.0],
    ])?;
    let l2 = matrix_from_rows::<T>(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, 0.0],
        vec![-1.0, 0.0, 0.0],
    ])?;
    let l3 = matrix_from_rows::<T>(&[
        vec![0.0, -1.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0],
    ])?;
    let alg = LieAlgebraBasis::from_basis(vec![l1, l2, l3], identity_gram(3))?;
    Ok(CatalogEntry {
        name: "so3".into(),
        pair: ReductivePair::from_indices(alg, &[2])?,
        chart_radius: 1.0,
        relations: GroupRelations::Orthogonal,
        ad_invariant: true,
    })
}

/// su(3) from the Gell-Mann generators e_a = -(i/2) lambda_a, realified to
/// 6x6; k = the maximal torus span(e3, e8), giving the non-symmetric flag
/// manifold su3/t2.
fn su3<T: Real>() -> Result<CatalogEntry<T>> {
    let s3 = 3.0f64.sqrt();
    let z3 = [[0.0; 3]; 3];
    let lam_re: [[[f64; 3]; 3]; 8] = [
        [[0., 1., 0.], [1., 0., 0.], [0., 0., 0.]],                   // l1
        z3,                                                           // l2 (imag)
        [[1., 0., 0.], [0., -1., 0.], [0., 0., 0.]],                  // l3
        [[0., 0., 1.], [0., 0., 0.], [1., 0., 0.]],                   // l4
        z3,                                                           // l5 (imag)
        [[0., 0., 0.], [0., 0., 1.], [0., 1., 0.]],                   // l6
        z3,                                                           // l7 (imag)
        [[1. / s3, 0., 0.], [0., 1. / s3, 0.], [0., 0., -2. / s3]],   // l8
    ];
    let lam_im: [[[f64; 3]; 3]; 8] = [
        z3,
        [[0., -1., 0.], [1., 0., 0.], [0., 0., 0.]],
        z3,
        z3,
        [[0., 0., -1.], [0., 0., 0.], [1., 0., 0.]],
        z3,
        [[0., 0., 0.], [0., 0., -1.], [0., 1., 0.]],
        z3,
    ];
    // e_a = -(i/2)(L_re + i L_im) = (L_im - i L_re) / 2
    let mut basis = Vec::with_capacity(8);
    for a in 0..8 {
        let mut re = [[0.0; 3]; 3];
        let mut im = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                re[i][j] = lam_im[a][i][j] / 2.0;
                im[i][j] = -lam_re[a][i][j] / 2.0;
            }
        }
        basis.push(realify::<T>(&re, &im));
    }
    let alg = LieAlgebraBasis::from_basis(basis, identity_gram(8))?;
    Ok(CatalogEntry {
        name: "su3".into(),
        pair: ReductivePair::from_indices(alg, &[2, 7])?,
        chart_radius: 0.8,
        relations: GroupRelations::Orthogonal,
        ad_invariant: true,
    })
}

/// JSON wire form of a catalog entry.
#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogEntryJson {
    pub name: Option<String>,
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    pub k_indices: Vec<usize>,
    pub chart_radius: f64,
    #[serde(default = "default_relations")]
    pub relations: GroupRelations,
    #[serde(default)]
    pub ad_invariant: bool,
}

fn default_relations() -> GroupRelations {
    GroupRelations::None
}

impl CatalogEntryJson {
    pub fn build<T: Real>(&self) -> Result<CatalogEntry<T>> {
        let alg = self.algebra.build()?;
        Ok(CatalogEntry {
            name: self.name.clone().unwrap_or_else(|| "custom".into()),
            pair: ReductivePair::from_indices(alg, &self.k_indices)?,
            chart_radius: self.chart_radius,
            relations: self.relations,
            ad_invariant: self.ad_invariant,
        })
    }
}

/// Serializes a catalog entry to the JSON wire form.
pub fn to_json<T: Real>(entry: &CatalogEntry<T>) -> CatalogEntryJson {
    let alg = entry.pair.algebra();
    let dim = alg.dim();
    let rep = alg.rep_size();
    let basis = alg
        .basis()
        .iter()
        .map(|b| {
            (0..rep)
                .map(|i| (0..rep).map(|j| to_f64(b[(i, j)])).collect())
                .collect()
        })
        .collect();
    let mut c = vec![vec![vec![0.0; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                c[i][j][k] = to_f64(alg.structure_constant(i, j, k));
            }
        }
    }
    let gram = (0..dim)
        .map(|i| (0..dim).map(|j| to_f64(alg.gram()[(i, j)])).collect())
        .collect();
    let k_indices = entry
        .pair
        .k_basis()
        .iter()
        .map(|v| v.iter().position(|&x| to_f64(x) != 0.0).unwrap_or(0))
        .collect();
    CatalogEntryJson {
        name: Some(entry.name.clone()),
        algebra: AlgebraJson {
            dim,
            basis,
            c,
            gram,
        },
        k_indices,
        chart_radius: entry.chart_radius,
        relations: entry.relations,
        ad_invariant: entry.ad_invariant,
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_subset().unwrap_or(f64::NAN)
}
