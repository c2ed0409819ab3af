//! Composite Gauss-Legendre quadrature on [0, 1]: 8 nodes per panel.
//!
//! With 4N+4 panels this integrates the trigonometric-polynomial products the
//! Fourier projection needs to well below 1e-12.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::scalar::{r, ru, Real};

/// 8-point Gauss-Legendre nodes on [-1, 1] (positive half).
const GL8_NODES: [f64; 4] = [
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// Composite Gauss-Legendre grid over [0, 1].
#[derive(Debug, Clone)]
pub struct QuadratureGrid<T: Real> {
    panels: usize,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureGrid<T> {
    pub fn new(panels: usize) -> Self {
        assert!(panels > 0, "need at least one panel");
        let width = T::one() / ru::<T>(panels);
        let half = width * r::<T>(0.5);
        let mut nodes = Vec::with_capacity(panels * 8);
        let mut weights = Vec::with_capacity(panels * 8);
        for p in 0..panels {
            let center = (ru::<T>(p) + r::<T>(0.5)) * width;
            for i in 0..4 {
                let x = r::<T>(GL8_NODES[i]) * half;
                let w = r::<T>(GL8_WEIGHTS[i]) * half;
                nodes.push(center - x);
                weights.push(w);
                nodes.push(center + x);
                weights.push(w);
            }
        }
        QuadratureGrid {
            panels,
            nodes,
            weights,
        }
    }

    /// The grid matching the default panel rule for truncation `n`.
    pub fn for_truncation(n: usize) -> Self {
        Self::new(4 * n + 4)
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Integrates a scalar function sampled on the grid.
    pub fn integrate_scalar(&self, values: &[T]) -> Result<T> {
        if values.len() != self.nodes.len() {
            return Err(Error::input("sample count does not match the grid"));
        }
        let mut acc = T::zero();
        for (v, w) in values.iter().zip(&self.weights) {
            acc += *v * *w;
        }
        Ok(acc)
    }

    /// Integrates a vector-valued function sampled on the grid.
    pub fn integrate(&self, values: &[DVector<T>]) -> Result<DVector<T>> {
        if values.len() != self.nodes.len() {
            return Err(Error::input("sample count does not match the grid"));
        }
        if values.is_empty() {
            return Err(Error::input("empty grid"));
        }
        let mut acc = DVector::zeros(values[0].len());
        for (v, w) in values.iter().zip(&self.weights) {
            acc += v * *w;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_trig_products_exactly() {
        let grid = QuadratureGrid::<f64>::for_truncation(4);
        // int_0^1 sin^2(2 pi t) = 1/2
        let vals: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&t| (2.0 * std::f64::consts::PI * t).sin().powi(2))
            .collect();
        let got = grid.integrate_scalar(&vals).unwrap();
        assert!((got - 0.5).abs() < 1e-14);
        // int_0^1 sin(8 pi t) cos(8 pi t) = 0
        let vals: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&t| (8.0 * std::f64::consts::PI * t).sin() * (8.0 * std::f64::consts::PI * t).cos())
            .collect();
        assert!(grid.integrate_scalar(&vals).unwrap().abs() < 1e-15);
    }

    #[test]
    fn sample_count_mismatch_is_error() {
        let grid = QuadratureGrid::<f64>::new(2);
        assert!(grid.integrate_scalar(&[1.0, 2.0]).is_err());
    }
}
