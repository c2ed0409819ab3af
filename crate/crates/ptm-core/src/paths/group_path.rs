//! Sampled curves in the matrix group on a uniform grid, with high-order
//! interpolation and grid differentiation.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{r, ru, Real};

/// A curve in G sampled at `t_j = j / M`, `j = 0..=M`.
#[derive(Debug, Clone)]
pub struct GroupPath<T: Real> {
    samples: Vec<DMatrix<T>>,
}

impl<T: Real> GroupPath<T> {
    /// Wraps samples, checking invertibility and the continuity guard
    /// `|g_{j+1} - g_j| <= C / M`.
    pub fn new(samples: Vec<DMatrix<T>>, continuity_c: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::input("group path needs at least two samples"));
        }
        let m = samples.len() - 1;
        let bound = r::<T>(continuity_c) / ru::<T>(m);
        for (j, g) in samples.iter().enumerate() {
            if g.clone().lu().try_inverse().is_none() {
                return Err(Error::input(format!("sample {j} is singular")));
            }
            if j > 0 {
                let jump = (g - &samples[j - 1]).norm();
                if jump > bound {
                    return Err(Error::input(format!(
                        "continuity guard violated between samples {} and {j}: {jump:?} > {bound:?}",
                        j - 1
                    )));
                }
            }
        }
        Ok(GroupPath { samples })
    }

    /// Wraps samples produced by a trusted solver without re-validating.
    pub(crate) fn from_samples_unchecked(samples: Vec<DMatrix<T>>) -> Self {
        GroupPath { samples }
    }

    pub fn grid_size(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn samples(&self) -> &[DMatrix<T>] {
        &self.samples
    }

    pub fn at_node(&self, j: usize) -> &DMatrix<T> {
        &self.samples[j]
    }

    pub fn start(&self) -> &DMatrix<T> {
        &self.samples[0]
    }

    pub fn end(&self) -> &DMatrix<T> {
        self.samples.last().expect("non-empty")
    }

    /// Entrywise 7-point Lagrange interpolation at an arbitrary t in [0, 1].
    pub fn value(&self, t: T) -> DMatrix<T> {
        interpolate(&self.samples, t)
    }

    /// Derivative samples at the grid nodes by 4th-order finite differences
    /// (central in the interior, one-sided at the ends).
    pub fn derivative_nodes(&self) -> Vec<DMatrix<T>> {
        let m = self.grid_size();
        let h = T::one() / ru::<T>(m);
        let twelve_h = r::<T>(12.0) * h;
        let g = &self.samples;
        let mut out = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let d = if j >= 2 && j + 2 <= m {
                (-&g[j + 2] + &g[j + 1] * r::<T>(8.0) - &g[j - 1] * r::<T>(8.0) + &g[j - 2])
                    / twelve_h
            } else if j == 0 {
                (&g[0] * r::<T>(-25.0) + &g[1] * r::<T>(48.0) - &g[2] * r::<T>(36.0)
                    + &g[3] * r::<T>(16.0)
                    - &g[4] * r::<T>(3.0))
                    / twelve_h
            } else if j == 1 {
                (&g[0] * r::<T>(-3.0) - &g[1] * r::<T>(10.0) + &g[2] * r::<T>(18.0)
                    - &g[3] * r::<T>(6.0)
                    + &g[4])
                    / twelve_h
            } else if j == m - 1 {
                (&g[m] * r::<T>(3.0) + &g[m - 1] * r::<T>(10.0) - &g[m - 2] * r::<T>(18.0)
                    + &g[m - 3] * r::<T>(6.0)
                    - &g[m - 4])
                    / twelve_h
            } else {
                (&g[m] * r::<T>(25.0) - &g[m - 1] * r::<T>(48.0) + &g[m - 2] * r::<T>(36.0)
                    - &g[m - 3] * r::<T>(16.0)
                    + &g[m - 4] * r::<T>(3.0))
                    / twelve_h
            };
            out.push(d);
        }
        out
    }
}

/// 7-point Lagrange interpolation of matrix samples on the uniform grid.
pub(crate) fn interpolate<T: Real>(samples: &[DMatrix<T>], t: T) -> DMatrix<T> {
    let m = samples.len() - 1;
    if m < 6 {
        // few samples: fall back to full-degree Lagrange
        return lagrange(samples, 0, samples.len(), t);
    }
    let h = 1.0 / m as f64;
    let tf = t.to_subset().unwrap_or(0.0);
    let center = (tf / h).round() as isize;
    let start = (center - 3).clamp(0, (m - 6) as isize) as usize;
    lagrange(samples, start, 7, t)
}

fn lagrange<T: Real>(samples: &[DMatrix<T>], start: usize, count: usize, t: T) -> DMatrix<T> {
    let m = samples.len() - 1;
    let h = T::one() / ru::<T>(m);
    let mut out = DMatrix::zeros(samples[0].nrows(), samples[0].ncols());
    for i in 0..count {
        let ti = ru::<T>(start + i) * h;
        let mut w = T::one();
        for j in 0..count {
            if i == j {
                continue;
            }
            let tj = ru::<T>(start + j) * h;
            w *= (t - tj) / (ti - tj);
        }
        out += &samples[start + i] * w;
    }
    out
}
