//! Small shared linear-algebra guards.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex eigenvalues of a dense real matrix with an iteration bound.
///
/// The upstream unbounded QR loop never terminates on the zero matrix (its
/// pre-scaling divides by the max entry) and on non-finite input, so both are
/// intercepted here; genuine non-convergence within the bound is a numerical
/// error.
pub fn complex_eigenvalues_bounded<T: Real>(m: &DMatrix<T>) -> Result<Vec<Complex<T>>> {
    if m.nrows() != m.ncols() {
        return Err(Error::input("eigen solve needs a square matrix"));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::numerical("eigen solve on non-finite matrix"));
    }
    if m.iter().all(|x| x.is_zero()) {
        return Ok(vec![Complex::new(T::zero(), T::zero()); n]);
    }
    let max_niter = 200 * n;
    let schur = Schur::try_new(m.clone(), T::default_epsilon(), max_niter)
        .ok_or_else(|| Error::numerical("eigenvalue iteration did not converge"))?;
    Ok(schur.complex_eigenvalues().iter().cloned().collect())
}

/// Spectral radius via [`complex_eigenvalues_bounded`].
pub fn spectral_radius_bounded<T: Real>(m: &DMatrix<T>) -> Result<T> {
    Ok(complex_eigenvalues_bounded(m)?
        .iter()
        .map(|z| z.re.hypot(z.im))
        .fold(T::zero(), |acc, x| acc.max(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_terminates() {
        let ev = complex_eigenvalues_bounded(&DMatrix::<f64>::zeros(4, 4)).unwrap();
        assert_eq!(ev.len(), 4);
        assert!(ev.iter().all(|z| z.re == 0.0 && z.im == 0.0));
    }

    #[test]
    fn identity_and_rotation() {
        let ev = complex_eigenvalues_bounded(&DMatrix::<f64>::identity(3, 3)).unwrap();
        assert!(ev.iter().all(|z| (z.re - 1.0).abs() < 1e-14 && z.im.abs() < 1e-14));
        let rot = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let mut ev = complex_eigenvalues_bounded(&rot).unwrap();
        ev.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap());
        assert!((ev[0].im - 1.0).abs() < 1e-14);
        assert!((ev[1].im + 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_finite_is_error() {
        let mut m = DMatrix::<f64>::zeros(2, 2);
        m[(0, 0)] = f64::NAN;
        assert!(complex_eigenvalues_bounded(&m).is_err());
    }

    #[test]
    fn nilpotent_and_rank_one_terminate() {
        // shift matrix (all eigenvalues zero, non-normal)
        let mut m = DMatrix::<f64>::zeros(5, 5);
        for i in 0..4 {
            m[(i, i + 1)] = 1.0;
        }
        let ev = complex_eigenvalues_bounded(&m).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-10));

        let mut r1 = DMatrix::<f64>::zeros(6, 6);
        r1[(2, 3)] = 0.7;
        let ev = complex_eigenvalues_bounded(&r1).unwrap();
        assert_eq!(ev.len(), 6);
    }
}
