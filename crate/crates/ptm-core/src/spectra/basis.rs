//! The compatible block basis of the lifted tangent space:
//! [horizontal block] [k block] [g sin 2pi t] [g cos 2pi t] ... up to mode N.

use nalgebra::DVector;

use crate::lie::ReductivePair;
use crate::paths::FourierPath;
use crate::scalar::Real;

/// Block label for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Block {
    Horizontal,
    K,
    Sin(usize),
    Cos(usize),
}

#[derive(Debug, Clone)]
pub struct CompatibleBasis<T: Real> {
    pair: ReductivePair<T>,
    /// Gram-orthonormal basis of the lifted tangent space of the base
    /// submanifold (empty for fibers), in g-coordinates.
    horizontal: Vec<DVector<T>>,
    truncation: usize,
}

impl<T: Real> CompatibleBasis<T> {
    pub fn for_fiber(pair: ReductivePair<T>, truncation: usize) -> Self {
        CompatibleBasis {
            pair,
            horizontal: Vec::new(),
            truncation,
        }
    }

    pub fn with_horizontal(
        pair: ReductivePair<T>,
        horizontal: Vec<DVector<T>>,
        truncation: usize,
    ) -> Self {
        CompatibleBasis {
            pair,
            horizontal,
            truncation,
        }
    }

    pub fn pair(&self) -> &ReductivePair<T> {
        &self.pair
    }

    pub fn horizontal(&self) -> &[DVector<T>] {
        &self.horizontal
    }

    pub fn horizontal_dim(&self) -> usize {
        self.horizontal.len()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn total_dim(&self) -> usize {
        self.horizontal.len() + self.pair.dim_k() + 2 * self.truncation * self.pair.dim()
    }

    pub fn k_offset(&self) -> usize {
        self.horizontal.len()
    }

    /// Offset of the `g sin(2 n pi t)` block (n is 1-based).
    pub fn sin_offset(&self, n: usize) -> usize {
        debug_assert!(n >= 1 && n <= self.truncation);
        self.horizontal.len() + self.pair.dim_k() + (n - 1) * 2 * self.pair.dim()
    }

    /// Offset of the `g cos(2 n pi t)` block (n is 1-based).
    pub fn cos_offset(&self, n: usize) -> usize {
        self.sin_offset(n) + self.pair.dim()
    }

    /// Block of index `i`.
    pub fn block_of(&self, i: usize) -> Block {
        let m = self.horizontal.len();
        let dk = self.pair.dim_k();
        let d = self.pair.dim();
        if i < m {
            return Block::Horizontal;
        }
        if i < m + dk {
            return Block::K;
        }
        let rest = i - m - dk;
        let n = rest / (2 * d) + 1;
        if rest % (2 * d) < d {
            Block::Sin(n)
        } else {
            Block::Cos(n)
        }
    }

    /// The i-th basis vector as an explicit Fourier path.
    pub fn basis_path(&self, i: usize) -> FourierPath<T> {
        let m = self.horizontal.len();
        let dk = self.pair.dim_k();
        let d = self.pair.dim();
        if i < m {
            return FourierPath::constant(self.horizontal[i].clone());
        }
        if i < m + dk {
            return FourierPath::constant(self.pair.k_basis()[i - m].clone());
        }
        let rest = i - m - dk;
        let n = rest / (2 * d) + 1;
        let slot = rest % (2 * d);
        let mut y = DVector::zeros(d);
        if slot < d {
            y[slot] = T::one();
            FourierPath::pure_sin(y, n)
        } else {
            y[slot - d] = T::one();
            FourierPath::pure_cos(y, n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;

    #[test]
    fn layout_and_paths() {
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let basis = CompatibleBasis::for_fiber(pair.clone(), 2);
        assert_eq!(basis.total_dim(), 1 + 2 * 2 * 3);
        assert_eq!(basis.k_offset(), 0);
        assert_eq!(basis.sin_offset(1), 1);
        assert_eq!(basis.cos_offset(1), 4);
        assert_eq!(basis.sin_offset(2), 7);
        assert_eq!(basis.block_of(0), Block::K);
        assert_eq!(basis.block_of(5), Block::Cos(1));
        assert_eq!(basis.block_of(12), Block::Cos(2));

        // k-block vector is the constant e3 path
        let p = basis.basis_path(0);
        assert_eq!(p.truncation(), 0);
        assert!((p.a0()[2] - 1.0).abs() < 1e-15);
        // second sin-mode vector of component 1
        let p = basis.basis_path(8);
        assert!((p.mode(2).0[1] - 1.0).abs() < 1e-15);
    }
}
