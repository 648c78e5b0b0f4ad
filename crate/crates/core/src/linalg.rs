//! Dense helpers shared by the geometric modules.
//!
//! Everything here works on `nalgebra` dynamic matrices. Symmetric inputs are
//! accepted when their asymmetry is at most `SYMMETRY_RTOL * max|entry|` and
//! are then replaced by `(S + S^T) / 2`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative asymmetry accepted on ingestion of a symmetric matrix.
pub const SYMMETRY_RTOL: f64 = 1e-10;

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

pub fn check_square(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Validates symmetry within tolerance and returns the symmetrized matrix.
pub fn symmetrize_checked(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_square(m)?;
    check_finite(m)?;
    let scale = max_abs(m);
    let asymmetry = max_abs(&(m - m.transpose()));
    if asymmetry > SYMMETRY_RTOL * scale {
        return Err(Error::NotSymmetric { asymmetry });
    }
    Ok((m + m.transpose()) * 0.5)
}

const JACOBI_MAX_SWEEPS: usize = 30;

/// Applies the Jacobi rotation that zeroes `d[(p, q)]` to `d` (both sides)
/// and to the columns of `v`.
fn jacobi_rotate(d: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let apq = d[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (d[(q, q)] - d[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let n = d.nrows();
    for k in 0..n {
        let (dkp, dkq) = (d[(k, p)], d[(k, q)]);
        d[(k, p)] = c * dkp - s * dkq;
        d[(k, q)] = s * dkp + c * dkq;
    }
    for k in 0..n {
        let (dpk, dqk) = (d[(p, k)], d[(q, k)]);
        d[(p, k)] = c * dpk - s * dqk;
        d[(q, k)] = s * dpk + c * dqk;
    }
    d[(p, q)] = 0.0;
    d[(q, p)] = 0.0;
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Symmetric eigendecomposition with eigenvalues sorted ascending and the
/// eigenvector columns permuted to match.
///
/// nalgebra's QR iteration leaves reconstruction residuals around `1e-9`
/// on some well-conditioned inputs, so its result is polished with cyclic
/// Jacobi sweeps on `U^T M U`, which start nearly diagonal and converge
/// quadratically.
pub fn sym_eigen_sorted(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut v = m.clone().symmetric_eigen().eigenvectors;
    let mut d = v.transpose() * m * &v;
    d = (&d + d.transpose()) * 0.5;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let scale = (0..n).map(|i| d[(i, i)].abs()).fold(0.0, f64::max);
        let off = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| d[(i, j)].abs())
            .fold(0.0, f64::max);
        if off <= f64::EPSILON * f64::EPSILON * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut d, &mut v, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[(a, a)].total_cmp(&d[(b, b)]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| d[(i, i)]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    (values, vectors)
}

pub fn sym_eigenvalues_sorted(m: &DMatrix<f64>) -> Vec<f64> {
    sym_eigen_sorted(m).0.iter().copied().collect()
}

/// Symmetrizes and checks positive definiteness through a Cholesky attempt.
pub fn spd_checked(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let s = symmetrize_checked(m)?;
    if s.clone().cholesky().is_none() {
        return Err(Error::NotPositiveDefinite);
    }
    let lo = sym_eigenvalues_sorted(&s)[0];
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(s)
}

pub fn spd_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let chol = m.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let inv = chol.inverse();
    check_finite(&inv).map_err(|_| Error::Singular)?;
    Ok((&inv + inv.transpose()) * 0.5)
}

/// `f(S)` for a symmetric positive definite `S`, applied spectrally.
fn spd_function(m: &DMatrix<f64>, f: impl Fn(f64) -> f64) -> Result<DMatrix<f64>> {
    let (values, vectors) = sym_eigen_sorted(m);
    if values[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    let diag = DMatrix::from_diagonal(&values.map(f));
    let out = &vectors * diag * vectors.transpose();
    Ok((&out + out.transpose()) * 0.5)
}

pub fn spd_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    spd_function(m, f64::sqrt)
}

pub fn spd_inv_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    spd_function(m, |v| 1.0 / v.sqrt())
}

pub fn invert(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = check_square(m)?;
    let lu = m.clone().lu();
    let det = lu.determinant();
    let scale = max_abs(m).powi(n as i32);
    if !det.is_finite() || det.abs() <= 1e-14 * scale {
        return Err(Error::Singular);
    }
    let inv = lu.try_inverse().ok_or(Error::Singular)?;
    check_finite(&inv).map_err(|_| Error::Singular)?;
    Ok(inv)
}

/// Eigenvalues (ascending) of the Hermitian matrix `re + i*im`.
///
/// Uses the real symmetric embedding `[[re, -im], [im, re]]`, whose spectrum
/// is that of the Hermitian matrix with every eigenvalue doubled.
pub fn hermitian_eigenvalues(re: &DMatrix<f64>, im: &DMatrix<f64>) -> Vec<f64> {
    let n = re.nrows();
    let mut big = DMatrix::zeros(2 * n, 2 * n);
    big.view_mut((0, 0), (n, n)).copy_from(re);
    big.view_mut((n, n), (n, n)).copy_from(re);
    big.view_mut((0, n), (n, n)).copy_from(&(-im));
    big.view_mut((n, 0), (n, n)).copy_from(im);
    let big = (&big + big.transpose()) * 0.5;
    let all = sym_eigenvalues_sorted(&big);
    all.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(Error::Degenerate("empty matrix".into()));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    let m = DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]);
    check_finite(&m)?;
    Ok(m)
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}
