//! Quantum covariance matrices and the uncertainty relations they satisfy.
//!
//! A symmetric `Σ` of size `2n`, ordered `(x_1..x_n, p_1..p_n)`, is a quantum
//! covariance matrix when the Hermitian matrix `Σ + (iħ/2) J` is positive
//! semidefinite. Equivalently, every Williamson eigenvalue of `Σ` is at least
//! `ħ/2`, or the covariance ellipsoid `½ z^T Σ^{-1} z <= 1` has symplectic
//! capacity at least `h/2 = πħ`. All three routes are implemented separately.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::body::{ConvexBody, Ellipsoid};
use crate::capacity;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polar::{self, check_hbar, PairVerdict};
use crate::sample;
use crate::symplectic::{self, SymplecticSpectrum};

/// Default absolute eigenvalue tolerance, scaled by `max|Σ|`.
pub const VALIDITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    sigma: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates shape and symmetry; positivity is checked by the operations
    /// that need it.
    pub fn new(sigma: DMatrix<f64>) -> Result<Self> {
        let sigma = linalg::symmetrize_checked(&sigma)?;
        symplectic::half_dimension(sigma.nrows())?;
        Ok(Self { sigma })
    }

    /// Assembles `[[Δ(x,x), Δ(x,p)], [Δ(x,p)^T, Δ(p,p)]]`.
    pub fn from_blocks(dxx: &DMatrix<f64>, dxp: &DMatrix<f64>, dpp: &DMatrix<f64>) -> Result<Self> {
        let n = dxx.nrows();
        for m in [dxx, dxp, dpp] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nrows().max(m.ncols()),
                });
            }
        }
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        s.view_mut((0, 0), (n, n)).copy_from(dxx);
        s.view_mut((0, n), (n, n)).copy_from(dxp);
        s.view_mut((n, 0), (n, n)).copy_from(&dxp.transpose());
        s.view_mut((n, n), (n, n)).copy_from(dpp);
        Self::new(s)
    }

    pub fn n(&self) -> usize {
        self.sigma.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.sigma
    }

    pub fn dxx(&self) -> DMatrix<f64> {
        let n = self.n();
        self.sigma.view((0, 0), (n, n)).into_owned()
    }

    pub fn dxp(&self) -> DMatrix<f64> {
        let n = self.n();
        self.sigma.view((0, n), (n, n)).into_owned()
    }

    pub fn dpp(&self) -> DMatrix<f64> {
        let n = self.n();
        self.sigma.view((n, n), (n, n)).into_owned()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            sigma: &self.sigma * factor,
        }
    }

    fn tol_scale(&self) -> f64 {
        linalg::max_abs(&self.sigma).max(f64::MIN_POSITIVE)
    }
}

/// Smallest eigenvalue of `Σ + (iħ/2) J`.
pub fn sigpos_min_eigenvalue(s: &CovarianceMatrix, hbar: f64) -> Result<f64> {
    check_hbar(hbar)?;
    let j = symplectic::standard_symplectic_matrix(s.n())?;
    let ev = linalg::hermitian_eigenvalues(s.matrix(), &(j * (0.5 * hbar)));
    Ok(ev[0])
}

/// `Σ + (iħ/2) J >= 0` within `tol * max|Σ|`.
pub fn is_quantum_covariance(s: &CovarianceMatrix, hbar: f64, tol: f64) -> Result<bool> {
    Ok(sigpos_min_eigenvalue(s, hbar)? >= -tol * s.tol_scale())
}

/// Williamson eigenvalues of `Σ`.
pub fn symplectic_spectrum(s: &CovarianceMatrix) -> Result<SymplecticSpectrum> {
    symplectic::symplectic_eigenvalues(s.matrix())
}

/// `min nu_j >= ħ/2` within `tol * max|Σ|`.
pub fn williamson_criterion(s: &CovarianceMatrix, hbar: f64, tol: f64) -> Result<bool> {
    check_hbar(hbar)?;
    Ok(symplectic_spectrum(s)?.min() >= 0.5 * hbar - tol * s.tol_scale())
}

/// Robertson–Schrödinger inequality per degree of freedom:
/// `(Δx_j)^2 (Δp_j)^2 >= Δ(x_j, p_j)^2 + ħ^2/4`.
pub fn rs_check(s: &CovarianceMatrix, hbar: f64) -> Result<Vec<bool>> {
    check_hbar(hbar)?;
    let n = s.n();
    let m = s.matrix();
    if (0..2 * n).any(|k| !(m[(k, k)] > 0.0)) {
        return Err(Error::InvalidParameter("variances must be positive".into()));
    }
    Ok((0..n)
        .map(|j| {
            let (vx, vp, c) = (m[(j, j)], m[(n + j, n + j)], m[(j, n + j)]);
            vx * vp >= c * c + 0.25 * hbar * hbar
        })
        .collect())
}

/// `Ω_Σ = {z : ½ z^T Σ^{-1} z <= 1}`, i.e. `Q = Σ^{-1} / 2`.
pub fn covariance_ellipsoid(s: &CovarianceMatrix) -> Result<Ellipsoid> {
    let sigma = linalg::spd_checked(s.matrix())?;
    Ellipsoid::from_inverse(sigma * 2.0)
}

/// `c(Ω_Σ) >= h/2 = πħ`, with the same absolute tolerance convention as
/// [`is_quantum_covariance`] translated to capacity units (`c = 2π ν_min`).
pub fn capacity_criterion(s: &CovarianceMatrix, hbar: f64, tol: f64) -> Result<bool> {
    check_hbar(hbar)?;
    let c = capacity::ellipsoid_capacity(&covariance_ellipsoid(s)?)?;
    Ok(c >= PI * hbar - 2.0 * PI * tol * s.tol_scale())
}

/// Projections of `Ω_Σ` onto position and momentum space:
/// `X = {½ x^T Δ(x,x)^{-1} x <= 1}`, `P = {½ p^T Δ(p,p)^{-1} p <= 1}`.
pub fn project_xp(s: &CovarianceMatrix) -> Result<(Ellipsoid, Ellipsoid)> {
    let a = linalg::spd_checked(&s.dxx())?;
    let b = linalg::spd_checked(&s.dpp())?;
    Ok((Ellipsoid::from_inverse(a * 2.0)?, Ellipsoid::from_inverse(b * 2.0)?))
}

/// Quantum-pair verdict for the projections of a valid quantum covariance
/// ellipsoid. Invalid inputs are rejected.
pub fn theorem2_check(s: &CovarianceMatrix, hbar: f64, tol: f64) -> Result<PairVerdict> {
    if !is_quantum_covariance(s, hbar, tol)? {
        return Err(Error::NotQuantumCovariance { hbar });
    }
    let (x, p) = project_xp(s)?;
    polar::is_quantum_pair(&x.into(), &p.into(), hbar, tol)
}

/// Eigenvalues of `AB` for SPD `A`, `B`, ascending.
pub fn product_eigenvalues(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>> {
    let a = linalg::spd_checked(a)?;
    let b = linalg::spd_checked(b)?;
    if a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    let r = linalg::spd_sqrt(&a)?;
    let m = &r * b * &r;
    Ok(linalg::sym_eigenvalues_sorted(&((&m + m.transpose()) * 0.5)))
}

/// Per-eigenvalue test `λ_j(AB) >= ħ^2/4 - tol`, ascending order.
pub fn heisenberg_eigen_check(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    hbar: f64,
    tol: f64,
) -> Result<Vec<bool>> {
    check_hbar(hbar)?;
    let bound = 0.25 * hbar * hbar;
    Ok(product_eigenvalues(a, b)?
        .into_iter()
        .map(|l| l >= bound - tol * bound.max(1.0))
        .collect())
}

/// The ellipsoid pair `{½ x^T A^{-1} x <= 1}`, `{½ p^T B^{-1} p <= 1}`.
pub fn envelope_pair(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<(ConvexBody, ConvexBody)> {
    let a = linalg::spd_checked(a)?;
    let b = linalg::spd_checked(b)?;
    Ok((
        Ellipsoid::from_inverse(a * 2.0)?.into(),
        Ellipsoid::from_inverse(b * 2.0)?.into(),
    ))
}

/// `Σ = M diag(ν, ν) M^T` for a symplectic `M` and Williamson spectrum `ν`.
pub fn covariance_from_williamson(m: &DMatrix<f64>, spectrum: &[f64]) -> Result<CovarianceMatrix> {
    let n = spectrum.len();
    if m.nrows() != 2 * n || m.ncols() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: m.nrows(),
        });
    }
    if spectrum.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidParameter("Williamson spectrum must be positive".into()));
    }
    let d = DMatrix::from_fn(2 * n, 2 * n, |i, j| if i == j { spectrum[i % n] } else { 0.0 });
    let s = m * d * m.transpose();
    CovarianceMatrix::new((&s + s.transpose()) * 0.5)
}

/// Seeded valid quantum covariance matrix `(1 + slack)(ħ/2) M M^T` with `M`
/// a random linear symplectic map. `slack = 0` gives a minimal-uncertainty
/// state whose Williamson spectrum is exactly `ħ/2`.
pub fn random_quantum_covariance(n: usize, seed: u64, hbar: f64, slack: f64) -> Result<CovarianceMatrix> {
    check_hbar(hbar)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if !(slack >= 0.0 && slack.is_finite()) {
        return Err(Error::InvalidParameter(format!("slack must be >= 0, got {slack}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = sample::random_symplectic(n, &mut rng);
    covariance_from_williamson(&m, &vec![(1.0 + slack) * 0.5 * hbar; n])
}

/// All covariance verdicts at once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarianceReport {
    pub n: usize,
    pub hbar: f64,
    pub sigpos_min_eigenvalue: f64,
    pub is_quantum: bool,
    pub symplectic_spectrum: Vec<f64>,
    pub williamson_ok: bool,
    pub capacity: f64,
    pub capacity_ok: bool,
    pub rs: Vec<bool>,
    /// Areas of `Ω_Σ` cut by each conjugate plane `(x_j, p_j)`.
    pub section_areas: Vec<f64>,
    /// Areas of the projections of `Ω_Σ` on each conjugate plane.
    pub projection_areas: Vec<f64>,
    pub pair: Option<PairVerdict>,
}

pub fn covariance_report(s: &CovarianceMatrix, hbar: f64, tol: f64) -> Result<CovarianceReport> {
    let is_quantum = is_quantum_covariance(s, hbar, tol)?;
    let spectrum = symplectic_spectrum(s)?;
    let capacity = capacity::ellipsoid_capacity(&covariance_ellipsoid(s)?)?;
    let pair = if is_quantum {
        Some(theorem2_check(s, hbar, tol)?)
    } else {
        None
    };
    Ok(CovarianceReport {
        n: s.n(),
        hbar,
        sigpos_min_eigenvalue: sigpos_min_eigenvalue(s, hbar)?,
        is_quantum,
        symplectic_spectrum: spectrum.values().to_vec(),
        williamson_ok: williamson_criterion(s, hbar, tol)?,
        capacity,
        capacity_ok: capacity_criterion(s, hbar, tol)?,
        rs: rs_check(s, hbar)?,
        section_areas: (0..s.n())
            .map(|j| capacity::section_area(s, j))
            .collect::<Result<_>>()?,
        projection_areas: (0..s.n())
            .map(|j| capacity::projection_area(s, j))
            .collect::<Result<_>>()?,
        pair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn diag(v: &[f64]) -> CovarianceMatrix {
        CovarianceMatrix::new(DMatrix::from_diagonal(&DVector::from_column_slice(v))).unwrap()
    }

    #[test]
    fn sigpos_examples() {
        let s = diag(&[1.0, 1.0]);
        assert!((sigpos_min_eigenvalue(&s, 1.0).unwrap() - 0.5).abs() < 1e-14);
        assert!(is_quantum_covariance(&s, 1.0, VALIDITY_TOL).unwrap());
        for n in 1..=3 {
            let half = CovarianceMatrix::new(DMatrix::from_diagonal_element(2 * n, 2 * n, 0.5)).unwrap();
            assert!(sigpos_min_eigenvalue(&half, 1.0).unwrap().abs() < 1e-14);
            assert!(is_quantum_covariance(&half, 1.0, VALIDITY_TOL).unwrap());
        }
        let bad = diag(&[0.25, 0.25]);
        assert!(!is_quantum_covariance(&bad, 1.0, VALIDITY_TOL).unwrap());
        assert!(!williamson_criterion(&bad, 1.0, VALIDITY_TOL).unwrap());
    }

    #[test]
    fn odd_and_asymmetric_rejected() {
        assert!(matches!(
            CovarianceMatrix::new(DMatrix::identity(3, 3)),
            Err(Error::OddDimension(3))
        ));
        let asym = DMatrix::from_row_slice(2, 2, &[1.0, 0.2, 0.0, 1.0]);
        assert!(matches!(CovarianceMatrix::new(asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn rs_examples() {
        assert_eq!(rs_check(&diag(&[1.0, 1.0]), 1.0).unwrap(), vec![true]);
        assert_eq!(rs_check(&diag(&[0.4, 0.4]), 1.0).unwrap(), vec![false]);
        assert_eq!(rs_check(&diag(&[1.0, 0.1, 1.0, 0.1]), 1.0).unwrap(), vec![true, false]);
    }

    #[test]
    fn covariance_ellipsoid_n1_explicit_form() {
        // Σ = [[vx, c], [c, vp]]; Ω: (vp x^2 - 2c x p + vx p^2) / (2D) <= 1
        let (vx, vp, c) = (1.3, 0.9, 0.4);
        let s = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[vx, c, c, vp])).unwrap();
        let e = covariance_ellipsoid(&s).unwrap();
        let d = vx * vp - c * c;
        let q = e.q();
        assert!((q[(0, 0)] - vp / (2.0 * d)).abs() < 1e-14);
        assert!((q[(1, 1)] - vx / (2.0 * d)).abs() < 1e-14);
        assert!((q[(0, 1)] + c / (2.0 * d)).abs() < 1e-14);
        let unit = covariance_ellipsoid(&diag(&[1.0, 1.0])).unwrap();
        assert!((unit.q() - DMatrix::identity(2, 2) * 0.5).abs().max() < 1e-15);
    }

    #[test]
    fn capacity_criterion_examples() {
        let half = diag(&[0.5, 0.5]);
        assert!(capacity_criterion(&half, 1.0, VALIDITY_TOL).unwrap());
        let c = capacity::ellipsoid_capacity(&covariance_ellipsoid(&half).unwrap()).unwrap();
        assert!((c - PI).abs() < 1e-13);
        let double = diag(&[1.0, 1.0]);
        let c = capacity::ellipsoid_capacity(&covariance_ellipsoid(&double).unwrap()).unwrap();
        assert!((c - 2.0 * PI).abs() < 1e-13);
        assert!(!capacity_criterion(&diag(&[0.25, 0.25]), 1.0, VALIDITY_TOL).unwrap());
        let c = capacity::ellipsoid_capacity(&covariance_ellipsoid(&diag(&[0.25, 0.25])).unwrap())
            .unwrap();
        assert!((c - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn projections() {
        let (sx, sp) = (0.8_f64, 1.7_f64);
        let s = diag(&[sx * sx, sp * sp]);
        let (x, p) = project_xp(&s).unwrap();
        let (x, p): (ConvexBody, ConvexBody) = (x.into(), p.into());
        assert!((x.axis_extent(0).unwrap() - 2f64.sqrt() * sx).abs() < 1e-14);
        assert!((p.axis_extent(0).unwrap() - 2f64.sqrt() * sp).abs() < 1e-14);

        let coupled = CovarianceMatrix::from_blocks(
            &DMatrix::identity(2, 2),
            &DMatrix::from_element(2, 2, 0.3),
            &DMatrix::identity(2, 2),
        )
        .unwrap();
        let plain = diag(&[1.0, 1.0, 1.0, 1.0]);
        let (x1, p1) = project_xp(&coupled).unwrap();
        let (x2, p2) = project_xp(&plain).unwrap();
        assert_eq!(x1.q(), x2.q());
        assert_eq!(p1.q(), p2.q());
        assert!((x2.q() - DMatrix::identity(2, 2) * 0.5).abs().max() < 1e-15);
    }

    #[test]
    fn theorem2_examples() {
        let v = theorem2_check(&diag(&[0.5, 0.5]), 1.0, VALIDITY_TOL).unwrap();
        assert!(v.is_pair && (v.lambda_max - 1.0).abs() < 1e-12);
        let v = theorem2_check(&diag(&[1.0, 1.0]), 1.0, VALIDITY_TOL).unwrap();
        assert!(v.is_pair && (v.lambda_max - 2.0).abs() < 1e-12);
        assert!(matches!(
            theorem2_check(&diag(&[0.25, 0.25]), 1.0, VALIDITY_TOL),
            Err(Error::NotQuantumCovariance { .. })
        ));
    }

    #[test]
    fn heisenberg_examples() {
        let h = DMatrix::identity(2, 2) * 0.5;
        assert_eq!(heisenberg_eigen_check(&h, &h, 1.0, VALIDITY_TOL).unwrap(), vec![true, true]);
        let a = DMatrix::identity(2, 2);
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 0.1]));
        // ascending: eig(AB) = {0.1, 1}
        assert_eq!(heisenberg_eigen_check(&a, &b, 1.0, VALIDITY_TOL).unwrap(), vec![false, true]);
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 1.0]));
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 4.0]));
        assert_eq!(product_eigenvalues(&a, &b).unwrap(), vec![4.0, 4.0]);
    }

    #[test]
    fn generator_examples() {
        let s = random_quantum_covariance(1, 4, 1.0, 0.0).unwrap();
        assert!((symplectic_spectrum(&s).unwrap().min() - 0.5).abs() < 1e-10);
        let s = random_quantum_covariance(3, 9, 1.0, 1.0).unwrap();
        for v in symplectic_spectrum(&s).unwrap().values() {
            assert!((v - 1.0).abs() < 1e-9);
        }
        assert_eq!(
            random_quantum_covariance(2, 77, 1.0, 0.3).unwrap(),
            random_quantum_covariance(2, 77, 1.0, 0.3).unwrap()
        );
        let s = random_quantum_covariance(2, 5, 1.0, 0.0).unwrap();
        assert!(linalg::max_abs(&s.dxp()) > 1e-3, "generator should couple x and p");
    }
}
