//! Truncated Fourier paths with g-valued coefficients:
//! `u(t) = a0 + sum_{n=1}^N (b_n sin 2n pi t + c_n cos 2n pi t)`.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieAlgebraBasis;
use crate::paths::QuadratureGrid;
use crate::scalar::{r, ru, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct FourierPath<T: Real> {
    dim: usize,
    a0: DVector<T>,
    /// (b_n, c_n) pairs for n = 1..N.
    modes: Vec<(DVector<T>, DVector<T>)>,
}

impl<T: Real> FourierPath<T> {
    pub fn new(a0: DVector<T>, modes: Vec<(DVector<T>, DVector<T>)>) -> Result<Self> {
        let dim = a0.len();
        if modes.iter().any(|(b, c)| b.len() != dim || c.len() != dim) {
            return Err(Error::input("mode coefficients must all have the same length"));
        }
        Ok(FourierPath { dim, a0, modes })
    }

    pub fn zero(dim: usize, truncation: usize) -> Self {
        FourierPath {
            dim,
            a0: DVector::zeros(dim),
            modes: (0..truncation)
                .map(|_| (DVector::zeros(dim), DVector::zeros(dim)))
                .collect(),
        }
    }

    /// The constant path with value `x`.
    pub fn constant(x: DVector<T>) -> Self {
        FourierPath {
            dim: x.len(),
            a0: x,
            modes: Vec::new(),
        }
    }

    /// Pure mode `y sin(2 n pi t)` (n >= 1).
    pub fn pure_sin(y: DVector<T>, n: usize) -> Self {
        let dim = y.len();
        let mut modes = vec![(DVector::zeros(dim), DVector::zeros(dim)); n];
        modes[n - 1].0 = y;
        FourierPath { dim, a0: DVector::zeros(dim), modes }
    }

    /// Pure mode `y cos(2 n pi t)` (n >= 1).
    pub fn pure_cos(y: DVector<T>, n: usize) -> Self {
        let dim = y.len();
        let mut modes = vec![(DVector::zeros(dim), DVector::zeros(dim)); n];
        modes[n - 1].1 = y;
        FourierPath { dim, a0: DVector::zeros(dim), modes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.modes.len()
    }

    pub fn a0(&self) -> &DVector<T> {
        &self.a0
    }

    pub fn a0_mut(&mut self) -> &mut DVector<T> {
        &mut self.a0
    }

    /// Coefficients of mode n (1-based).
    pub fn mode(&self, n: usize) -> (&DVector<T>, &DVector<T>) {
        (&self.modes[n - 1].0, &self.modes[n - 1].1)
    }

    pub fn mode_mut(&mut self, n: usize) -> (&mut DVector<T>, &mut DVector<T>) {
        let m = &mut self.modes[n - 1];
        (&mut m.0, &mut m.1)
    }

    pub fn pad_to(&mut self, truncation: usize) {
        while self.modes.len() < truncation {
            self.modes.push((DVector::zeros(self.dim), DVector::zeros(self.dim)));
        }
    }

    /// Evaluates the defining trigonometric sum.
    pub fn evaluate(&self, t: T) -> Result<DVector<T>> {
        if t < T::zero() || t > T::one() {
            return Err(Error::input("evaluate: t must lie in [0, 1]"));
        }
        Ok(self.evaluate_unchecked(t))
    }

    pub(crate) fn evaluate_unchecked(&self, t: T) -> DVector<T> {
        let mut out = self.a0.clone();
        for (n, (b, c)) in self.modes.iter().enumerate() {
            let ang = T::two_pi() * ru::<T>(n + 1) * t;
            out += b * ang.sin() + c * ang.cos();
        }
        out
    }

    pub fn add(&self, other: &FourierPath<T>) -> Result<FourierPath<T>> {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &FourierPath<T>) -> Result<FourierPath<T>> {
        self.zip(other, |x, y| x - y)
    }

    fn zip(
        &self,
        other: &FourierPath<T>,
        f: impl Fn(&DVector<T>, &DVector<T>) -> DVector<T>,
    ) -> Result<FourierPath<T>> {
        if self.dim != other.dim {
            return Err(Error::input("dimension mismatch"));
        }
        let n = self.truncation().max(other.truncation());
        let mut a = self.clone();
        a.pad_to(n);
        let mut b = other.clone();
        b.pad_to(n);
        let modes = a
            .modes
            .iter()
            .zip(&b.modes)
            .map(|((ab, ac), (bb, bc))| (f(ab, bb), f(ac, bc)))
            .collect();
        Ok(FourierPath {
            dim: self.dim,
            a0: f(&a.a0, &b.a0),
            modes,
        })
    }

    pub fn scale(&self, s: T) -> FourierPath<T> {
        FourierPath {
            dim: self.dim,
            a0: &self.a0 * s,
            modes: self.modes.iter().map(|(b, c)| (b * s, c * s)).collect(),
        }
    }

    /// Exact L2 inner product under the algebra's Gram matrix (Parseval).
    pub fn l2_inner(&self, other: &FourierPath<T>, alg: &LieAlgebraBasis<T>) -> Result<T> {
        if self.dim != other.dim {
            return Err(Error::input("dimension mismatch"));
        }
        let mut acc = alg.inner(&self.a0, &other.a0);
        let half = r::<T>(0.5);
        let n = self.truncation().min(other.truncation());
        for i in 0..n {
            acc += (alg.inner(&self.modes[i].0, &other.modes[i].0)
                + alg.inner(&self.modes[i].1, &other.modes[i].1))
                * half;
        }
        Ok(acc)
    }

    pub fn l2_norm_sq(&self, alg: &LieAlgebraBasis<T>) -> T {
        self.l2_inner(self, alg).expect("same path")
    }

    pub fn l2_norm(&self, alg: &LieAlgebraBasis<T>) -> T {
        self.l2_norm_sq(alg).max(T::zero()).sqrt()
    }

    /// `int_0^1 u(t) dt` — exactly the constant coefficient.
    pub fn integral_01(&self) -> DVector<T> {
        self.a0.clone()
    }

    /// `int_0^t u(s) ds` in closed form.
    pub fn antiderivative(&self, t: T) -> Result<DVector<T>> {
        if t < T::zero() || t > T::one() {
            return Err(Error::input("antiderivative: t must lie in [0, 1]"));
        }
        let mut out = &self.a0 * t;
        for (n, (b, c)) in self.modes.iter().enumerate() {
            let freq = T::two_pi() * ru::<T>(n + 1);
            let ang = freq * t;
            out += b * ((T::one() - ang.cos()) / freq) + c * (ang.sin() / freq);
        }
        Ok(out)
    }

    /// Applies `[., xi]` coefficient-wise; mode structure is preserved exactly.
    pub fn bracket_with_constant(
        &self,
        alg: &LieAlgebraBasis<T>,
        xi: &DVector<T>,
    ) -> Result<FourierPath<T>> {
        let a0 = alg.bracket(&self.a0, xi)?;
        let modes = self
            .modes
            .iter()
            .map(|(b, c)| Ok((alg.bracket(b, xi)?, alg.bracket(c, xi)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FourierPath {
            dim: self.dim,
            a0,
            modes,
        })
    }

    /// Applies a linear coordinate map coefficient-wise.
    pub fn map_linear(&self, m: &nalgebra::DMatrix<T>) -> FourierPath<T> {
        FourierPath {
            dim: m.nrows(),
            a0: m * &self.a0,
            modes: self.modes.iter().map(|(b, c)| (m * b, m * c)).collect(),
        }
    }

    /// The path `t -> -u(1 - t)` (the reversal that inverts the transport).
    pub fn time_reversal_conjugate(&self) -> FourierPath<T> {
        FourierPath {
            dim: self.dim,
            a0: -&self.a0,
            modes: self.modes.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }

    /// Fourier coefficients of grid samples by composite quadrature.
    ///
    /// Exact (to roundoff) on trigonometric polynomials of degree <= n_out;
    /// the grid must carry at least 4 n_out + 4 panels.
    pub fn project_to_truncation(
        grid: &QuadratureGrid<T>,
        samples: &[DVector<T>],
        n_out: usize,
    ) -> Result<FourierPath<T>> {
        if grid.panels() < 4 * n_out + 4 {
            return Err(Error::input(format!(
                "quadrature grid too coarse: {} panels for truncation {} (need {})",
                grid.panels(),
                n_out,
                4 * n_out + 4
            )));
        }
        let a0 = grid.integrate(samples)?;
        let dim = a0.len();
        let two = r::<T>(2.0);
        let mut modes = Vec::with_capacity(n_out);
        for n in 1..=n_out {
            let freq = T::two_pi() * ru::<T>(n);
            let mut b = DVector::zeros(dim);
            let mut c = DVector::zeros(dim);
            for ((v, &t), &w) in samples.iter().zip(grid.nodes()).zip(grid.weights()) {
                let ang = freq * t;
                b += v * (w * ang.sin());
                c += v * (w * ang.cos());
            }
            modes.push((b * two, c * two));
        }
        Ok(FourierPath { dim, a0, modes })
    }

    /// Checks `|int_0^t u|^2 <= t int_0^1 |u|^2` under the Gram norm.
    pub fn check_l2_inequality(&self, t: T, alg: &LieAlgebraBasis<T>) -> Result<IneqReport> {
        let partial = self.antiderivative(t)?;
        let lhs = alg.inner(&partial, &partial);
        let bound = t * self.l2_norm_sq(alg);
        Ok(IneqReport {
            lhs: to_f64(lhs),
            bound: to_f64(bound),
            slack: to_f64(bound - lhs),
        })
    }
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_subset().unwrap_or(f64::NAN)
}

/// Outcome of the L2 inequality check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IneqReport {
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
}

/// JSON wire form: `{"N": n, "a0": [...], "modes": [{"b": [...], "c": [...]}]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct FourierPathJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub a0: Vec<f64>,
    pub modes: Vec<ModeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModeJson {
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl FourierPathJson {
    pub fn build<T: Real>(&self) -> Result<FourierPath<T>> {
        if self.modes.len() != self.n {
            return Err(Error::input("mode count must equal N"));
        }
        let conv = |v: &[f64]| DVector::from_iterator(v.len(), v.iter().map(|&x| r::<T>(x)));
        let a0 = conv(&self.a0);
        let modes = self
            .modes
            .iter()
            .map(|m| (conv(&m.b), conv(&m.c)))
            .collect();
        FourierPath::new(a0, modes)
    }

    pub fn from_path<T: Real>(p: &FourierPath<T>) -> Self {
        let conv = |v: &DVector<T>| v.iter().map(|&x| to_f64(x)).collect();
        FourierPathJson {
            n: p.truncation(),
            a0: conv(p.a0()),
            modes: (1..=p.truncation())
                .map(|n| {
                    let (b, c) = p.mode(n);
                    ModeJson {
                        b: conv(b),
                        c: conv(c),
                    }
                })
                .collect(),
        }
    }
}

/// Path of the form `a + b t + (Fourier modes)` — the shape the canonical
/// shape-operator representatives and their images live in. Exact algebra;
/// the `t` term is only expanded into the truncated basis at the very end.
#[derive(Debug, Clone)]
pub struct LinearTrigPath<T: Real> {
    pub constant: DVector<T>,
    pub linear: DVector<T>,
    pub trig: FourierPath<T>,
}

impl<T: Real> LinearTrigPath<T> {
    pub fn new(constant: DVector<T>, linear: DVector<T>, trig: FourierPath<T>) -> Self {
        LinearTrigPath {
            constant,
            linear,
            trig,
        }
    }

    pub fn evaluate(&self, t: T) -> DVector<T> {
        &self.constant + &self.linear * t + self.trig.evaluate_unchecked(t)
    }

    pub fn bracket_with_constant(
        &self,
        alg: &LieAlgebraBasis<T>,
        xi: &DVector<T>,
    ) -> Result<LinearTrigPath<T>> {
        Ok(LinearTrigPath {
            constant: alg.bracket(&self.constant, xi)?,
            linear: alg.bracket(&self.linear, xi)?,
            trig: self.trig.bracket_with_constant(alg, xi)?,
        })
    }

    pub fn integral_01(&self) -> DVector<T> {
        &self.constant + &self.linear * r::<T>(0.5) + self.trig.integral_01()
    }

    /// Expands into the truncated Fourier basis, using
    /// `t - 1/2 = -sum_{n<=N} sin(2 n pi t) / (n pi)` with the tail dropped.
    pub fn to_fourier(&self, truncation: usize) -> FourierPath<T> {
        let mut out = self.trig.clone();
        out.pad_to(truncation);
        *out.a0_mut() += &self.constant + &self.linear * r::<T>(0.5);
        for n in 1..=truncation {
            let coeff = -T::one() / (T::pi() * ru::<T>(n));
            *out.mode_mut(n).0 += &self.linear * coeff;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use proptest::prelude::*;

    fn su2_alg() -> LieAlgebraBasis<f64> {
        catalog::load::<f64>("su2").unwrap().pair.algebra().clone()
    }

    fn e(i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(3);
        v[i] = 1.0;
        v
    }

    #[test]
    fn evaluate_examples() {
        let x = DVector::from_vec(vec![0.3, -0.4, 1.0]);
        let u = FourierPath::constant(x.clone());
        assert_eq!(u.evaluate(0.37).unwrap(), x);

        let u = FourierPath::pure_sin(e(0), 1);
        assert!((u.evaluate(0.25).unwrap() - e(0)).norm() < 1e-15);

        let u = FourierPath::pure_cos(e(1), 2);
        assert!((u.evaluate(0.25).unwrap() + e(1)).norm() < 1e-15);

        assert!(u.evaluate(1.2).is_err());
    }

    #[test]
    fn integral_and_antiderivative() {
        let x = DVector::from_vec(vec![0.5, 0.0, -0.2]);
        assert_eq!(FourierPath::constant(x.clone()).integral_01(), x);
        assert!(FourierPath::pure_sin(e(0), 3).integral_01().norm() == 0.0);

        // antiderivative of sin(2 pi t) is (1 - cos(2 pi t)) / (2 pi)
        let u = FourierPath::pure_sin(e(0), 1);
        let t = 0.3;
        let expect = (1.0 - (2.0 * std::f64::consts::PI * t).cos()) / (2.0 * std::f64::consts::PI);
        assert!((u.antiderivative(t).unwrap() - e(0) * expect).norm() < 1e-15);
    }

    #[test]
    fn l2_inner_sin_squared_is_half() {
        let alg = su2_alg();
        let u = FourierPath::pure_sin(e(0), 1);
        let formula = u.l2_inner(&u, &alg).unwrap();
        assert!((formula - 0.5).abs() < 1e-15);
        // quadrature oracle
        let grid = QuadratureGrid::<f64>::for_truncation(1);
        let vals: Vec<f64> = grid
            .nodes()
            .iter()
            .map(|&t| {
                let v = u.evaluate(t).unwrap();
                alg.inner(&v, &v)
            })
            .collect();
        let quad = grid.integrate_scalar(&vals).unwrap();
        assert!((formula - quad).abs() < 1e-13);
    }

    #[test]
    fn bracket_with_constant_su2() {
        let alg = su2_alg();
        // [e2, e1] = -e3, so e2 sin(2 pi t) maps to -e3 sin(2 pi t)
        let u = FourierPath::pure_sin(e(1), 1);
        let v = u.bracket_with_constant(&alg, &e(0)).unwrap();
        let (b1, c1) = v.mode(1);
        assert!((b1 + e(2)).norm() < 1e-15);
        assert!(c1.norm() == 0.0);
        assert!(v.a0().norm() == 0.0);

        let zero = u.bracket_with_constant(&alg, &DVector::zeros(3)).unwrap();
        assert!(zero.l2_norm(&alg) == 0.0);
    }

    #[test]
    fn projection_recovers_modes() {
        let grid = QuadratureGrid::<f64>::for_truncation(3);
        let u = FourierPath::pure_sin(e(0), 1);
        let samples: Vec<_> = grid.nodes().iter().map(|&t| u.evaluate(t).unwrap()).collect();
        let p = FourierPath::project_to_truncation(&grid, &samples, 3).unwrap();
        assert!((p.mode(1).0 - e(0)).norm() < 1e-12);
        assert!(p.mode(1).1.norm() < 1e-12);
        assert!(p.mode(2).0.norm() < 1e-12);
        assert!(p.a0().norm() < 1e-12);

        let x = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let samples: Vec<_> = grid.nodes().iter().map(|_| x.clone()).collect();
        let p = FourierPath::project_to_truncation(&grid, &samples, 3).unwrap();
        assert!((p.a0() - x).norm() < 1e-13);
    }

    #[test]
    fn projection_of_sawtooth_matches_classical_series() {
        // t - 1/2 has Fourier series -sum sin(2 n pi t)/(n pi)
        let n_out = 6;
        let grid = QuadratureGrid::<f64>::for_truncation(n_out);
        let samples: Vec<_> = grid
            .nodes()
            .iter()
            .map(|&t| DVector::from_vec(vec![t - 0.5]))
            .collect();
        let p = FourierPath::project_to_truncation(&grid, &samples, n_out).unwrap();
        for n in 1..=n_out {
            let expect = -1.0 / (n as f64 * std::f64::consts::PI);
            assert!(
                (p.mode(n).0[0] - expect).abs() < 1e-6,
                "b_{n} = {} vs {}",
                p.mode(n).0[0],
                expect
            );
            assert!(p.mode(n).1[0].abs() < 1e-6);
        }
    }

    #[test]
    fn projection_grid_too_coarse_is_error() {
        let grid = QuadratureGrid::<f64>::new(4);
        let samples: Vec<_> = grid.nodes().iter().map(|_| DVector::zeros(1)).collect();
        assert!(FourierPath::project_to_truncation(&grid, &samples, 3).is_err());
    }

    #[test]
    fn linear_trig_expansion_matches_pointwise() {
        let p = LinearTrigPath::new(
            DVector::<f64>::from_vec(vec![0.2]),
            DVector::from_vec(vec![1.0]),
            FourierPath::pure_cos(DVector::from_vec(vec![0.7]), 2),
        );
        let f = p.to_fourier(400);
        // away from the endpoints the truncated sawtooth converges pointwise
        for &t in &[0.21, 0.5, 0.77] {
            let exact = p.evaluate(t)[0];
            let approx = f.evaluate(t).unwrap()[0];
            assert!((exact - approx).abs() < 2e-3, "t={t}: {exact} vs {approx}");
        }
        // the integral is exact by construction
        assert!((p.integral_01()[0] - f.integral_01()[0]).abs() < 1e-15);
    }

    #[test]
    fn l2_inequality_examples() {
        let alg = su2_alg();
        // constant path, t = 1: equality
        let u = FourierPath::constant(DVector::from_vec(vec![0.4, 0.1, -0.3]));
        let rep = u.check_l2_inequality(1.0, &alg).unwrap();
        assert!(rep.slack.abs() < 1e-14);
        // pure sine at t = 1: lhs 0, bound 1/2
        let u = FourierPath::pure_sin(e(0), 1);
        let rep = u.check_l2_inequality(1.0, &alg).unwrap();
        assert!(rep.lhs.abs() < 1e-28);
        assert!((rep.bound - 0.5).abs() < 1e-14);
    }

    #[test]
    fn l2_inequality_random_paths() {
        use rand::{Rng, SeedableRng};
        let alg = su2_alg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(0..5usize);
            let mut u = FourierPath::zero(3, n);
            for i in 0..3 {
                u.a0_mut()[i] = rng.gen_range(-1.0..1.0);
            }
            for m in 1..=n {
                for i in 0..3 {
                    u.mode_mut(m).0[i] = rng.gen_range(-1.0..1.0);
                    u.mode_mut(m).1[i] = rng.gen_range(-1.0..1.0);
                }
            }
            let t = rng.gen_range(0.0..=1.0);
            let rep = u.check_l2_inequality(t, &alg).unwrap();
            assert!(rep.slack >= -1e-12, "slack {}", rep.slack);
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut u = FourierPath::zero(2, 2);
        u.a0_mut()[0] = 1.5;
        u.mode_mut(2).1[1] = -0.25;
        let json = FourierPathJson::from_path(&u);
        let s = serde_json::to_string(&json).unwrap();
        let back: FourierPathJson = serde_json::from_str(&s).unwrap();
        let v = back.build::<f64>().unwrap();
        assert_eq!(u, v);
    }

    proptest! {
        /// Parseval: the coefficient formula matches composite quadrature.
        #[test]
        fn parseval_matches_quadrature(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 3 * 5),
            t_check in 0.0f64..1.0,
        ) {
            let alg = su2_alg();
            let mut u = FourierPath::zero(3, 2);
            for i in 0..3 {
                u.a0_mut()[i] = coeffs[i];
                for m in 1..=2usize {
                    u.mode_mut(m).0[i] = coeffs[3 * (2 * m - 1) + i];
                    u.mode_mut(m).1[i] = coeffs[3 * (2 * m) + i];
                }
            }
            let formula = u.l2_norm_sq(&alg);
            let grid = QuadratureGrid::<f64>::for_truncation(2);
            let vals: Vec<f64> = grid.nodes().iter().map(|&t| {
                let v = u.evaluate(t).unwrap();
                alg.inner(&v, &v)
            }).collect();
            let quad = grid.integrate_scalar(&vals).unwrap();
            prop_assert!((formula - quad).abs() < 1e-10);
            // linearity of evaluate
            let w = u.add(&u).unwrap();
            let lhs = w.evaluate(t_check).unwrap();
            let rhs = u.evaluate(t_check).unwrap() * 2.0;
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        /// bracket_with_constant commutes with projection on trig polynomials.
        #[test]
        fn bracket_commutes_with_projection(
            coeffs in proptest::collection::vec(-1.0f64..1.0, 9),
        ) {
            let alg = su2_alg();
            let mut u = FourierPath::zero(3, 1);
            for i in 0..3 {
                u.a0_mut()[i] = coeffs[i];
                u.mode_mut(1).0[i] = coeffs[3 + i];
                u.mode_mut(1).1[i] = coeffs[6 + i];
            }
            let xi = DVector::from_vec(vec![0.3, -0.2, 0.9]);
            let grid = QuadratureGrid::<f64>::for_truncation(1);
            let route1 = u.bracket_with_constant(&alg, &xi).unwrap();
            let samples: Vec<_> = grid
                .nodes()
                .iter()
                .map(|&t| alg.bracket(&u.evaluate(t).unwrap(), &xi).unwrap())
                .collect();
            let route2 = FourierPath::project_to_truncation(&grid, &samples, 1).unwrap();
            let diff = route1.sub(&route2).unwrap();
            prop_assert!(diff.l2_norm(&alg) < 1e-12);
        }
    }
}
