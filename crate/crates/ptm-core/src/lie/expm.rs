//! Dense matrix exponential, principal logarithm, and the differential of exp.
//!
//! The exponential uses scaling-and-squaring with a fixed [13/13] Pade kernel;
//! the catalog matrices are at most 6x6, so accuracy is preferred over speed
//! (conservative scaling threshold). The logarithm uses inverse scaling by
//! Denman-Beavers square roots followed by the alternating series.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::{r, Real};

/// Pade [13/13] numerator coefficients (denominator is the same with
/// alternating signs).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Conservative scaling threshold for the order-13 kernel.
const THETA13: f64 = 4.25;

fn one_norm<T: Real>(a: &DMatrix<T>) -> T {
    let mut best = T::zero();
    for j in 0..a.ncols() {
        let mut s = T::zero();
        for i in 0..a.nrows() {
            s += a[(i, j)].abs();
        }
        best = best.max(s);
    }
    best
}

/// Matrix exponential by scaling-and-squaring with the [13/13] Pade kernel.
pub fn matrix_exp<T: Real>(a: &DMatrix<T>) -> DMatrix<T> {
    assert_eq!(a.nrows(), a.ncols(), "matrix_exp needs a square matrix");
    let n = a.nrows();
    let norm = one_norm(a);
    let theta = r::<T>(THETA13);
    let mut squarings = 0u32;
    let mut scaled = a.clone();
    if norm > theta {
        let ratio = (norm / theta).ln() / r::<T>(2.0).ln();
        squarings = num_traits::cast::<f64, u32>(ratio.floor().to_subset().unwrap_or(0.0))
            .unwrap_or(0)
            + 1;
        let factor = r::<T>(0.5).powi(squarings as i32);
        scaled *= factor;
    }

    // Horner-style evaluation of U (odd part) and V (even part).
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = DMatrix::<T>::identity(n, n);
    let b = |i: usize| r::<T>(PADE13[i]);

    let u_inner = &a6 * b(13) + &a4 * b(11) + &a2 * b(9);
    let u_poly = &a6 * &u_inner + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1);
    let u = &scaled * u_poly;

    let v_inner = &a6 * b(12) + &a4 * b(10) + &a2 * b(8);
    let v = &a6 * &v_inner + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);

    let num = &v + &u;
    let den = &v - &u;
    let mut result = den
        .lu()
        .solve(&num)
        .expect("Pade denominator must be invertible");
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Spectral radius via the complex eigenvalues of the (small, dense) matrix.
fn spectral_radius<T: Real>(a: &DMatrix<T>) -> T {
    a.clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.hypot(z.im))
        .fold(T::zero(), |acc, x| acc.max(x))
}

/// One Denman-Beavers square-root iteration pass.
fn sqrt_denman_beavers<T: Real>(a: &DMatrix<T>) -> Result<DMatrix<T>> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = DMatrix::<T>::identity(n, n);
    for _ in 0..60 {
        let y_inv = y
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::numerical("singular iterate in matrix square root"))?;
        let z_inv = z
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::numerical("singular iterate in matrix square root"))?;
        let y_next = (&y + z_inv) * r::<T>(0.5);
        let z_next = (&z + y_inv) * r::<T>(0.5);
        let delta = (&y_next - &y).norm();
        y = y_next;
        z = z_next;
        if delta < r::<T>(1e-16) * (T::one() + y.norm()) {
            break;
        }
    }
    Ok(y)
}

/// Principal matrix logarithm.
///
/// Only defined where the principal branch converges; the spectral radius of
/// `g - I` must stay below 1, which is enforced up front.
pub fn matrix_log<T: Real>(g: &DMatrix<T>) -> Result<DMatrix<T>> {
    assert_eq!(g.nrows(), g.ncols(), "matrix_log needs a square matrix");
    let n = g.nrows();
    let id = DMatrix::<T>::identity(n, n);
    let rho = spectral_radius(&(g - &id));
    if rho >= T::one() {
        return Err(Error::domain(format!(
            "matrix outside the principal-log convergence region (spectral radius of g - I is {rho:?})"
        )));
    }

    // Inverse scaling: take square roots until the series converges fast.
    let mut a = g.clone();
    let mut k = 0u32;
    while (&a - &id).norm() > r(0.35) {
        a = sqrt_denman_beavers(&a)?;
        k += 1;
        if k > 40 {
            return Err(Error::numerical("matrix_log: square-root scaling failed"));
        }
    }

    // log(I + E) = E - E^2/2 + E^3/3 - ...
    let e = &a - &id;
    let mut term = e.clone();
    let mut out = DMatrix::<T>::zeros(n, n);
    for m in 1..=80 {
        let sign = if m % 2 == 1 { T::one() } else { -T::one() };
        out += &term * (sign / crate::scalar::ru::<T>(m));
        term = &term * &e;
        if term.norm() < r(1e-18) {
            break;
        }
    }
    Ok(out * r::<T>(2.0).powi(k as i32))
}

/// Differential of the exponential map: `d/ds exp(X + sV) |_{s=0}`.
///
/// Computed as `exp(X) * sum_k (-ad_X)^k (V) / (k+1)!` with the series
/// truncated once the term norm falls below the configured threshold.
pub fn dexp<T: Real>(x: &DMatrix<T>, v: &DMatrix<T>, term_tol: f64) -> DMatrix<T> {
    matrix_exp(x) * dexp_series(x, v, term_tol)
}

/// The series factor of [`dexp`]: `sum_k (-ad_X)^k (V) / (k+1)!`.
pub fn dexp_series<T: Real>(x: &DMatrix<T>, v: &DMatrix<T>, term_tol: f64) -> DMatrix<T> {
    let scale = T::one().max(v.norm());
    let mut term = v.clone();
    let mut out = v.clone();
    for k in 0..120usize {
        // term_{k+1} = -[X, term_k] / (k + 2)
        term = (x * &term - &term * x) * (-T::one() / crate::scalar::ru::<T>(k + 2));
        out += &term;
        if term.norm() < r::<T>(term_tol) * scale {
            break;
        }
    }
    out
}

/// `phi1(A) = sum_k A^k / (k+1)!` applied to a dense matrix; this is the
/// coordinate form of the dexp series used by the chart machinery.
pub fn phi1<T: Real>(a: &DMatrix<T>, term_tol: f64) -> DMatrix<T> {
    let n = a.nrows();
    let mut term = DMatrix::<T>::identity(n, n);
    let mut out = DMatrix::<T>::identity(n, n);
    for k in 0..120usize {
        term = a * &term * (T::one() / crate::scalar::ru::<T>(k + 2));
        out += &term;
        if term.norm() < r::<T>(term_tol) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn skew3(v: [f64; 3]) -> DMatrix<f64> {
        DMatrix::from_row_slice(
            3,
            3,
            &[0.0, -v[2], v[1], v[2], 0.0, -v[0], -v[1], v[0], 0.0],
        )
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = DMatrix::<f64>::zeros(4, 4);
        assert_eq!(matrix_exp(&z), DMatrix::identity(4, 4));
    }

    #[test]
    fn exp_matches_rotation_closed_form() {
        // Rodrigues: exp of a unit-axis skew matrix with angle t.
        let t = 0.83;
        let a = skew3([t, 0.0, 0.0]);
        let e = matrix_exp(&a);
        let expect = DMatrix::from_row_slice(
            3,
            3,
            &[
                1.0,
                0.0,
                0.0,
                0.0,
                t.cos(),
                -t.sin(),
                0.0,
                t.sin(),
                t.cos(),
            ],
        );
        assert!((e - expect).norm() < 1e-14);
    }

    #[test]
    fn exp_large_norm_scaling() {
        // norm ~ 10: exercises the squaring path; check against the split
        // exp(A) = exp(A/2)^2 identity computed independently.
        let a = skew3([6.0, -5.0, 4.0]);
        let e = matrix_exp(&a);
        let h = matrix_exp(&(&a * 0.5));
        assert!((&h * &h - e).norm() < 1e-12);
    }

    #[test]
    fn log_exp_roundtrip() {
        let a = skew3([0.3, -0.2, 0.35]);
        let x = matrix_log(&matrix_exp(&a)).unwrap();
        assert!((x - a).norm() < 1e-10);
    }

    #[test]
    fn log_outside_region_is_domain_error() {
        // exp of a rotation by pi has eigenvalues -1: spectral radius of
        // g - I equals 2.
        let a = skew3([std::f64::consts::PI, 0.0, 0.0]);
        let g = matrix_exp(&a);
        assert!(matches!(matrix_log(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn dexp_at_zero_is_direction() {
        let z = DMatrix::<f64>::zeros(3, 3);
        let v = skew3([0.1, 0.7, -0.3]);
        assert!((dexp(&z, &v, 1e-14) - &v).norm() < 1e-15);
    }

    #[test]
    fn dexp_matches_central_differences() {
        let x = skew3([0.4, -0.1, 0.25]);
        let v = skew3([-0.2, 0.5, 0.1]);
        let d = dexp(&x, &v, 1e-14);
        let h = 1e-6;
        let fd = (matrix_exp(&(&x + &v * h)) - matrix_exp(&(&x - &v * h))) / (2.0 * h);
        assert!((d - fd).norm() < 1e-8);
    }

    #[test]
    fn phi1_matches_scalar_function() {
        // For A = diag(a), phi1(A) = (e^a - 1)/a elementwise on the diagonal.
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5f64, -1.2, 0.0]));
        let p = phi1(&a, 1e-16);
        let f = |x: f64| if x == 0.0 { 1.0 } else { (x.exp() - 1.0) / x };
        for (i, &x) in [0.5f64, -1.2, 0.0].iter().enumerate() {
            assert!((p[(i, i)] - f(x)).abs() < 1e-14);
        }
    }
}
