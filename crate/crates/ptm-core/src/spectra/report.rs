//! Eigenvalue analysis of assembled shape operators: spectra, regularized
//! traces I and II, austerity matching, block-norm decay, and the finite-rank
//! perturbation probe.

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{r, ru, Real};
use crate::spectra::{Block, ShapeOperatorMatrix};
use crate::tol::Tolerances;

/// A complex eigenvalue with multiplicity (grouped at relative tolerance).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub truncation: usize,
    pub eigenvalues: Vec<EigenvalueEntry>,
    /// Positive real parts, descending (with multiplicity).
    pub mu: Vec<f64>,
    /// Negative real parts, ascending (with multiplicity).
    pub nu: Vec<f64>,
    pub pair_partial_sums: Vec<f64>,
    pub trace_r_i: f64,
    pub trace_r_i_converged: bool,
    pub diag_entries: Vec<f64>,
    pub trace_r_ii: f64,
    /// Per-block diagonal sums: (label, sum).
    pub per_block_sums: Vec<(String, f64)>,
    /// Operator norm of the mode-block compressions, n = 1..N.
    pub block_norms: Vec<f64>,
    pub lambda_max: f64,
    pub tail_bound: f64,
}

/// Raw complex spectrum (counted with multiplicity), conjugate-symmetrized.
pub fn eigen_spectrum<T: Real>(a: &ShapeOperatorMatrix<T>) -> Result<Vec<Complex<f64>>> {
    complex_eigenvalues_f64(&a.matrix)
}

pub(crate) fn complex_eigenvalues_f64<T: Real>(m: &DMatrix<T>) -> Result<Vec<Complex<f64>>> {
    if m.nrows() != m.ncols() {
        return Err(Error::input("eigen solve needs a square matrix"));
    }
    let ev = m.clone().complex_eigenvalues();
    let mut out: Vec<Complex<f64>> = ev
        .iter()
        .map(|z| {
            Complex::new(
                z.re.to_subset().unwrap_or(f64::NAN),
                z.im.to_subset().unwrap_or(f64::NAN),
            )
        })
        .collect();
    if out.iter().any(|z| z.re.is_nan() || z.im.is_nan()) {
        return Err(Error::numerical("eigenvalue iteration did not converge"));
    }
    // deterministic order, conjugate pairs adjacent
    out.sort_by(|a, b| {
        (b.norm(), b.re, b.im.abs(), b.im)
            .partial_cmp(&(a.norm(), a.re, a.im.abs(), a.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    // enforce exact conjugate symmetry in reporting
    let tol = 1e-10;
    let n = out.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || out[i].im.abs() <= tol {
            continue;
        }
        for j in i + 1..n {
            if !used[j]
                && (out[i].re - out[j].re).abs() <= tol * out[i].norm().max(1.0)
                && (out[i].im + out[j].im).abs() <= tol * out[i].norm().max(1.0)
            {
                let re = 0.5 * (out[i].re + out[j].re);
                let im = 0.5 * (out[i].im - out[j].im);
                out[i] = Complex::new(re, im);
                out[j] = Complex::new(re, -im);
                used[i] = true;
                used[j] = true;
                break;
            }
        }
    }
    Ok(out)
}

/// Groups a raw spectrum into (value, multiplicity) entries.
pub fn group_eigenvalues(values: &[Complex<f64>], rel_tol: f64) -> Vec<EigenvalueEntry> {
    let mut entries: Vec<EigenvalueEntry> = Vec::new();
    for z in values {
        let found = entries.iter_mut().find(|e| {
            let d = Complex::new(e.re - z.re, e.im - z.im).norm();
            d <= rel_tol * z.norm().max(1.0)
        });
        match found {
            Some(e) => e.multiplicity += 1,
            None => entries.push(EigenvalueEntry {
                re: z.re,
                im: z.im,
                multiplicity: 1,
            }),
        }
    }
    entries
}

/// Regularized trace I: mu sorted descending, nu ascending, zero-padded to
/// equal length, value = sum of pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceIReport {
    pub value: f64,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub pair_partial_sums: Vec<f64>,
    pub converged: bool,
}

pub fn regularized_trace_i(values: &[Complex<f64>], tol: &Tolerances) -> TraceIReport {
    // ties in the ordering broken by descending imaginary magnitude, then by
    // the (deterministic) position in the input
    let mut mu: Vec<(f64, f64, usize)> = Vec::new();
    let mut nu: Vec<(f64, f64, usize)> = Vec::new();
    for (i, z) in values.iter().enumerate() {
        if z.re > tol.real_part_zero {
            mu.push((z.re, z.im.abs(), i));
        } else if z.re < -tol.real_part_zero {
            nu.push((z.re, z.im.abs(), i));
        }
    }
    mu.sort_by(|a, b| {
        (b.0, b.1, a.2)
            .partial_cmp(&(a.0, a.1, b.2))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    nu.sort_by(|a, b| {
        (a.0, b.1, a.2)
            .partial_cmp(&(b.0, a.1, b.2))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let len = mu.len().max(nu.len());
    let mut partial = Vec::with_capacity(len);
    let mut acc = 0.0;
    for k in 0..len {
        let m = mu.get(k).map_or(0.0, |x| x.0);
        let n = nu.get(k).map_or(0.0, |x| x.0);
        acc += m + n;
        partial.push(acc);
    }
    TraceIReport {
        value: acc,
        mu: mu.into_iter().map(|x| x.0).collect(),
        nu: nu.into_iter().map(|x| x.0).collect(),
        pair_partial_sums: partial,
        // finite matrices always converge; the flag reports Cauchy behavior
        // of the partial sums
        converged: true,
    }
}

/// Regularized trace II: the diagonal sum in the compatible basis, with
/// per-block partial sums.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceIIReport {
    pub value: f64,
    pub diag_entries: Vec<f64>,
    pub per_block_sums: Vec<(String, f64)>,
}

pub fn regularized_trace_ii<T: Real>(a: &ShapeOperatorMatrix<T>) -> TraceIIReport {
    let n = a.matrix.nrows();
    let mut diag = Vec::with_capacity(n);
    let mut blocks: Vec<(String, f64)> = Vec::new();
    for i in 0..n {
        let v = a.matrix[(i, i)].to_subset().unwrap_or(f64::NAN);
        diag.push(v);
        let label = match a.basis.block_of(i) {
            Block::Horizontal => "horizontal".to_string(),
            Block::K => "k".to_string(),
            Block::Sin(m) => format!("sin{m}"),
            Block::Cos(m) => format!("cos{m}"),
        };
        match blocks.last_mut() {
            Some((l, s)) if *l == label => *s += v,
            _ => blocks.push((label, v)),
        }
    }
    TraceIIReport {
        value: diag.iter().sum(),
        diag_entries: diag,
        per_block_sums: blocks,
    }
}

/// Austerity check: greedy matching of the spectrum against its negation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AustereReport {
    pub matched_pairs: usize,
    pub unmatched_mass: f64,
}

pub fn austere_check(values: &[Complex<f64>], tol: &Tolerances) -> AustereReport {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .norm()
            .partial_cmp(&values[a].norm())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut used = vec![false; values.len()];
    let mut matched = 0usize;
    let mut unmatched = 0.0f64;
    for (rank, &i) in order.iter().enumerate() {
        if used[i] {
            continue;
        }
        used[i] = true;
        if values[i].norm() <= tol.eigen_grouping {
            // zeros are self-symmetric
            matched += 1;
            continue;
        }
        let mut found = false;
        for &j in order.iter().skip(rank + 1) {
            if used[j] {
                continue;
            }
            if (values[i] + values[j]).norm() <= tol.eigen_grouping * values[i].norm().max(1.0) {
                used[j] = true;
                matched += 1;
                found = true;
                break;
            }
        }
        if !found {
            unmatched += values[i].norm();
        }
    }
    AustereReport {
        matched_pairs: matched,
        unmatched_mass: unmatched,
    }
}

/// Mode-block decay data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    /// Operator norm of the mode-n compression, n = 1..N.
    pub block_norms: Vec<f64>,
    /// Operator norm of ad_xi under the chosen inner product.
    pub ad_norm: f64,
    /// min over n of ad_norm/(2 n pi) - norm_n.
    pub min_slack: f64,
    /// Least-squares exponent of norm_n against n (None when all norms 0).
    pub fit_exponent: Option<f64>,
}

pub fn block_norm_decay<T: Real>(a: &ShapeOperatorMatrix<T>) -> Result<DecayReport> {
    let pair = a.basis.pair();
    let alg = pair.algebra();
    let dim = pair.dim();
    let n_tr = a.basis.truncation();

    // orthonormalizing factor of the Gram inner product
    let chol = alg
        .gram()
        .clone()
        .cholesky()
        .ok_or_else(|| Error::input("gram not positive definite"))?;
    let lt = chol.l().transpose();
    let lt_inv = lt
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::numerical("gram factor not invertible"))?;

    let spectral_norm = |m: &DMatrix<T>| -> f64 {
        let svd = m.clone().svd(false, false);
        svd.singular_values
            .iter()
            .fold(T::zero(), |acc, &s| acc.max(s))
            .to_subset()
            .unwrap_or(f64::NAN)
    };

    // kappa = |ad_xi| under the Gram inner product
    let b_xi = -alg.ad_matrix(&a.xi)?;
    let ad_norm = spectral_norm(&(&lt * &b_xi * &lt_inv));

    let mut t2 = DMatrix::<T>::zeros(2 * dim, 2 * dim);
    let mut t2_inv = DMatrix::<T>::zeros(2 * dim, 2 * dim);
    for i in 0..dim {
        for j in 0..dim {
            t2[(i, j)] = lt[(i, j)];
            t2[(dim + i, dim + j)] = lt[(i, j)];
            t2_inv[(i, j)] = lt_inv[(i, j)];
            t2_inv[(dim + i, dim + j)] = lt_inv[(i, j)];
        }
    }

    let mut norms = Vec::with_capacity(n_tr);
    for n in 1..=n_tr {
        let off = a.basis.sin_offset(n);
        let block = a.matrix.view((off, off), (2 * dim, 2 * dim)).into_owned();
        norms.push(spectral_norm(&(&t2 * block * &t2_inv)));
    }

    let min_slack = norms
        .iter()
        .enumerate()
        .map(|(i, &nn)| ad_norm / (2.0 * (i + 1) as f64 * std::f64::consts::PI) - nn)
        .fold(f64::INFINITY, f64::min);

    let fit_exponent = if norms.iter().all(|&x| x > 1e-300) {
        let pts: Vec<(f64, f64)> = norms
            .iter()
            .enumerate()
            .map(|(i, &nn)| (((i + 1) as f64).ln(), nn.ln()))
            .collect();
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        if denom.abs() < 1e-12 {
            None
        } else {
            Some((n * sxy - sx * sy) / denom)
        }
    } else {
        None
    };

    Ok(DecayReport {
        block_norms: norms,
        ad_norm,
        min_slack,
        fit_exponent,
    })
}

/// Finite-rank perturbation probe: how far trace I is from additive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub trace_r_i_sum: f64,
    pub trace_r_i_a: f64,
    pub plain_trace_b: f64,
    /// trace_r_I(A + B) - (trace_r_I(A) + trace(B)); no pass/fail attached.
    pub difference: f64,
}

pub fn perturbation_probe<T: Real>(
    a: &ShapeOperatorMatrix<T>,
    b: &DMatrix<T>,
) -> Result<ProbeReport> {
    let tol = Tolerances::default();
    if b.nrows() != a.matrix.nrows() || b.ncols() != a.matrix.ncols() {
        return Err(Error::input("perturbation must match the operator size"));
    }
    let svd = b.clone().svd(false, false);
    let smax = svd
        .singular_values
        .iter()
        .fold(T::zero(), |acc, &s| acc.max(s));
    let rank = svd
        .singular_values
        .iter()
        .filter(|&&s| s > r::<T>(1e-12) * T::one().max(smax))
        .count();
    if rank > 5 {
        return Err(Error::input(format!(
            "perturbation rank {rank} exceeds the probe limit 5"
        )));
    }
    let ev_a = complex_eigenvalues_f64(&a.matrix)?;
    let ev_sum = complex_eigenvalues_f64(&(&a.matrix + b))?;
    let tr_a = regularized_trace_i(&ev_a, &tol).value;
    let tr_sum = regularized_trace_i(&ev_sum, &tol).value;
    let tr_b: f64 = (0..b.nrows())
        .map(|i| b[(i, i)].to_subset().unwrap_or(f64::NAN))
        .sum();
    Ok(ProbeReport {
        trace_r_i_sum: tr_sum,
        trace_r_i_a: tr_a,
        plain_trace_b: tr_b,
        difference: tr_sum - (tr_a + tr_b),
    })
}

/// Assembles the full spectrum report for an operator.
pub fn full_report<T: Real>(a: &ShapeOperatorMatrix<T>) -> Result<SpectrumReport> {
    let tol = Tolerances::default();
    let values = eigen_spectrum(a)?;
    let grouped = group_eigenvalues(&values, tol.eigen_grouping);
    let tr1 = regularized_trace_i(&values, &tol);
    let tr2 = regularized_trace_ii(a);
    let decay = block_norm_decay(a)?;
    let lambda_max = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SpectrumReport {
        truncation: a.basis.truncation(),
        eigenvalues: grouped,
        mu: tr1.mu,
        nu: tr1.nu,
        pair_partial_sums: tr1.pair_partial_sums,
        trace_r_i: tr1.value,
        trace_r_i_converged: tr1.converged,
        diag_entries: tr2.diag_entries,
        trace_r_ii: tr2.value,
        per_block_sums: tr2.per_block_sums,
        block_norms: decay.block_norms,
        lambda_max,
        tail_bound: a.tail_bound,
    })
}

fn _unused<T: Real>(_: T) {
    let _ = ru::<T>(0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use nalgebra::DVector;
    use crate::spectra::assemble_fiber_shape_operator;

    fn su2_fiber(n: usize) -> ShapeOperatorMatrix<f64> {
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let xi = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assemble_fiber_shape_operator(&pair, &xi, n).unwrap()
    }

    #[test]
    fn rotation_block_has_pure_imaginary_pair() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let ev = complex_eigenvalues_f64(&m).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0] - Complex::new(0.0, 1.0)).norm() < 1e-12);
        assert!((ev[1] - Complex::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_matrix_spectrum() {
        let pair = catalog::load::<f64>("abelian2").unwrap().pair;
        let xi = DVector::from_vec(vec![1.0, 0.0]);
        let a = assemble_fiber_shape_operator(&pair, &xi, 3).unwrap();
        let ev = eigen_spectrum(&a).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-14));
        let tol = Tolerances::default();
        let rep = austere_check(&ev, &tol);
        assert_eq!(rep.unmatched_mass, 0.0);
    }

    #[test]
    fn trace_i_padding_rule() {
        let tol = Tolerances::default();
        // {+1, -1} -> 0
        let ev = vec![Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)];
        assert_eq!(regularized_trace_i(&ev, &tol).value, 0.0);
        // {0.5, -0.2, -0.3} -> (0.5 - 0.3) + (0 - 0.2) = 0
        let ev = vec![
            Complex::new(0.5, 0.0),
            Complex::new(-0.2, 0.0),
            Complex::new(-0.3, 0.0),
        ];
        let rep = regularized_trace_i(&ev, &tol);
        assert!((rep.value - 0.0).abs() < 1e-15);
        assert_eq!(rep.mu, vec![0.5]);
        assert_eq!(rep.nu, vec![-0.3, -0.2]);
        assert_eq!(rep.pair_partial_sums.len(), 2);
        assert!((rep.pair_partial_sums[0] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn fiber_spectrum_is_austere_and_trace_free() {
        let tol = Tolerances::default();
        for n in [4usize, 8, 16] {
            let a = su2_fiber(n);
            let ev = eigen_spectrum(&a).unwrap();
            let aus = austere_check(&ev, &tol);
            assert!(aus.unmatched_mass <= 1e-8, "N={n}: {}", aus.unmatched_mass);
            let tr1 = regularized_trace_i(&ev, &tol);
            assert!(tr1.value.abs() <= 1e-10, "N={n}: {}", tr1.value);
            let tr2 = regularized_trace_ii(&a);
            assert_eq!(tr2.value, 0.0);
        }
    }

    #[test]
    fn austere_negative_control() {
        let tol = Tolerances::default();
        let ev = vec![
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
            Complex::new(-1.0, 0.0),
        ];
        let rep = austere_check(&ev, &tol);
        assert!((rep.unmatched_mass - 2.0).abs() < 1e-12);
    }

    #[test]
    fn block_norms_match_closed_form() {
        let a = su2_fiber(8);
        let decay = block_norm_decay(&a).unwrap();
        assert!((decay.ad_norm - 1.0).abs() < 1e-12);
        for (i, &nn) in decay.block_norms.iter().enumerate() {
            let bound = 1.0 / (2.0 * (i + 1) as f64 * std::f64::consts::PI);
            assert!((nn - bound).abs() < 1e-12, "n={}: {nn} vs {bound}", i + 1);
        }
        assert!(decay.min_slack >= -1e-10);
        let ex = decay.fit_exponent.unwrap();
        assert!((ex + 1.0).abs() < 0.05, "exponent {ex}");
    }

    #[test]
    fn block_norms_scale_linearly_with_xi() {
        let pair = catalog::load::<f64>("su2").unwrap().pair;
        let xi = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let a1 = assemble_fiber_shape_operator(&pair, &xi, 4).unwrap();
        let a2 = assemble_fiber_shape_operator(&pair, &(&xi * 2.0), 4).unwrap();
        let d1 = block_norm_decay(&a1).unwrap();
        let d2 = block_norm_decay(&a2).unwrap();
        for (x, y) in d1.block_norms.iter().zip(&d2.block_norms) {
            assert!((2.0 * x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn probe_zero_perturbation_and_plain_trace() {
        let a = su2_fiber(4);
        let n = a.matrix.nrows();
        let rep = perturbation_probe(&a, &DMatrix::zeros(n, n)).unwrap();
        assert_eq!(rep.difference, 0.0);

        // A = 0 case: difference must vanish (plain finite trace)
        let pair = catalog::load::<f64>("abelian2").unwrap().pair;
        let xi = DVector::from_vec(vec![1.0, 0.0]);
        let a0 = assemble_fiber_shape_operator(&pair, &xi, 2).unwrap();
        let n = a0.matrix.nrows();
        let mut b = DMatrix::<f64>::zeros(n, n);
        b[(0, 0)] = 0.7;
        b[(1, 1)] = -0.2;
        b[(0, 1)] = 0.4;
        let rep = perturbation_probe(&a0, &b).unwrap();
        assert!(rep.difference.abs() < 1e-12, "{rep:?}");

        // rank guard
        let mut big = DMatrix::<f64>::zeros(n, n);
        for i in 0..7.min(n) {
            big[(i, i)] = 1.0;
        }
        assert!(perturbation_probe(&a0, &big).is_err());
    }

    #[test]
    fn trace_ii_invariant_under_block_respecting_basis_change() {
        use rand::{Rng, SeedableRng};
        let a = su2_fiber(3);
        let n = a.matrix.nrows();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        // block-diagonal random invertible change of basis
        let mut s = DMatrix::<f64>::identity(n, n);
        let mut fill = |off: usize, len: usize, s: &mut DMatrix<f64>| {
            let mut block = DMatrix::<f64>::from_fn(len, len, |_, _| rng.gen_range(-1.0..1.0));
            for i in 0..len {
                block[(i, i)] += 2.0;
            }
            for i in 0..len {
                for j in 0..len {
                    s[(off + i, off + j)] = block[(i, j)];
                }
            }
        };
        fill(0, 1, &mut s);
        for m in 1..=3usize {
            fill(a.basis.sin_offset(m), 3, &mut s);
            fill(a.basis.cos_offset(m), 3, &mut s);
        }
        let s_inv = s.clone().try_inverse().unwrap();
        let transformed = &s_inv * &a.matrix * &s;
        let tr_orig: f64 = (0..n).map(|i| a.matrix[(i, i)]).sum();
        let tr_new: f64 = (0..n).map(|i| transformed[(i, i)]).sum();
        assert!((tr_orig - tr_new).abs() < 1e-10);
    }

    #[test]
    fn full_report_assembles() {
        let a = su2_fiber(4);
        let rep = full_report(&a).unwrap();
        assert_eq!(rep.truncation, 4);
        assert_eq!(rep.diag_entries.len(), a.matrix.nrows());
        assert_eq!(rep.block_norms.len(), 4);
        assert!(rep.lambda_max > 0.2 && rep.lambda_max < 0.4);
        let total_mult: usize = rep.eigenvalues.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total_mult, a.matrix.nrows());
    }
}
