//! Symplectic linear algebra on phase space `R^{2n}` with coordinates ordered
//! `(x_1..x_n, p_1..p_n)`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// The standard symplectic matrix `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn standard_symplectic_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("degrees of freedom must be >= 1".into()));
    }
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(k, n + k)] = 1.0;
        j[(n + k, k)] = -1.0;
    }
    Ok(j)
}

pub(crate) fn half_dimension(dim: usize) -> Result<usize> {
    if dim == 0 || dim % 2 != 0 {
        return Err(Error::OddDimension(dim));
    }
    Ok(dim / 2)
}

/// `sigma(z, z') = z'^T J z`.
pub fn symplectic_form(z: &DVector<f64>, zp: &DVector<f64>) -> Result<f64> {
    if z.len() != zp.len() {
        return Err(Error::DimensionMismatch {
            expected: z.len(),
            found: zp.len(),
        });
    }
    let n = half_dimension(z.len())?;
    // z'^T J z = sum_k z'_k p_k - z'_{n+k} x_k
    Ok((0..n).map(|k| zp[k] * z[n + k] - zp[n + k] * z[k]).sum())
}

/// True iff `max |M^T J M - J| <= tol`.
pub fn is_symplectic(m: &DMatrix<f64>, tol: f64) -> Result<bool> {
    let dim = linalg::check_square(m)?;
    let n = half_dimension(dim)?;
    let j = standard_symplectic_matrix(n)?;
    let defect = linalg::max_abs(&(m.transpose() * &j * m - &j));
    Ok(defect <= tol)
}

/// The symplectic block matrix `M_L = diag(L^T, L^{-1})` for invertible `L`.
pub fn block_symplectic(l: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = linalg::check_square(l)?;
    let l_inv = linalg::invert(l)?;
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&l.transpose());
    m.view_mut((n, n), (n, n)).copy_from(&l_inv);
    Ok(m)
}

/// Williamson (symplectic) eigenvalues of a positive definite matrix, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum(Vec<f64>);

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn min(&self) -> f64 {
        self.0[0]
    }

    pub fn max(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The `n` positive numbers `nu_j` with `eig(J S) = {+-i nu_j}`.
///
/// Computed as the positive half of the spectrum of the Hermitian matrix
/// `i S^{1/2} J S^{1/2}`, which is similar to `i J S`.
pub fn symplectic_eigenvalues(s: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    let s = linalg::spd_checked(s)?;
    let n = half_dimension(s.nrows())?;
    let root = linalg::spd_sqrt(&s)?;
    let j = standard_symplectic_matrix(n)?;
    let k = &root * j * &root;
    let k = (&k - k.transpose()) * 0.5;
    let zero = DMatrix::zeros(2 * n, 2 * n);
    let all = linalg::hermitian_eigenvalues(&zero, &k);
    let mut values: Vec<f64> = all[n..].to_vec();
    // The negative half mirrors the positive half; average for symmetry.
    for (k, v) in values.iter_mut().enumerate() {
        *v = 0.5 * (*v - all[n - 1 - k]);
    }
    values.sort_by(f64::total_cmp);
    Ok(SymplecticSpectrum(values))
}

/// Result of the simultaneous diagonalization `L^T A L = L^{-1} B L^{-T} = Lambda`.
#[derive(Debug, Clone)]
pub struct BlockWilliamson {
    pub l: DMatrix<f64>,
    pub lambda: DMatrix<f64>,
    /// Eigenvalues of `AB`, ascending. `lambda = diag(sqrt(product_eigenvalues))`.
    pub product_eigenvalues: Vec<f64>,
    /// Largest of the two post-condition residuals.
    pub residual: f64,
}

/// Residual limit for [`block_diagonalize`], relative to `max(1, |Lambda|)`.
pub const BLOCK_RESIDUAL_LIMIT: f64 = 1e-8;

/// Finds invertible `L` with `L^T A L = L^{-1} B L^{-T} = Lambda` where
/// `Lambda = diag(sqrt(eig(AB)))` sorted ascending.
///
/// With `A^{1/2} B A^{1/2} = U D^2 U^T`, the choice `L = A^{-1/2} U D^{1/2}`
/// satisfies both identities.
pub fn block_diagonalize(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<BlockWilliamson> {
    let a = linalg::spd_checked(a)?;
    let b = linalg::spd_checked(b)?;
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let a_half = linalg::spd_sqrt(&a)?;
    let a_inv_half = linalg::spd_inv_sqrt(&a)?;
    let m = &a_half * &b * &a_half;
    let m = (&m + m.transpose()) * 0.5;
    let (eig, u) = linalg::sym_eigen_sorted(&m);
    if eig[0] <= 0.0 {
        return Err(Error::NotPositiveDefinite);
    }
    let d = eig.map(f64::sqrt);
    let l = &a_inv_half * &u * DMatrix::from_diagonal(&d.map(f64::sqrt));
    let lambda = DMatrix::from_diagonal(&d);

    let l_inv = linalg::invert(&l)?;
    let r1 = linalg::max_abs(&(l.transpose() * &a * &l - &lambda));
    let r2 = linalg::max_abs(&(&l_inv * &b * l_inv.transpose() - &lambda));
    let residual = r1.max(r2);
    let limit = BLOCK_RESIDUAL_LIMIT * linalg::max_abs(&lambda).max(1.0);
    if residual > limit {
        return Err(Error::ResidualTooLarge { residual, limit });
    }
    Ok(BlockWilliamson {
        l,
        lambda,
        product_eigenvalues: eig.iter().copied().collect(),
        residual,
    })
}
