//! Symplectic capacities with closed forms: phase-space ellipsoids, Lagrangian
//! products `X × P`, conjugate-plane sections of covariance ellipsoids, and
//! the area of a product of intervals.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::body::{ConvexBody, Ellipsoid};
use crate::covariance::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::polar::{self, check_hbar};
use crate::symplectic;

/// Relative tolerance for the bound and equality flags in [`CapacityReport`].
pub const CAPACITY_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CapacityKind {
    Ellipsoid,
    Product,
    Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub value: f64,
    pub kind: CapacityKind,
    /// The lower bound this kind is compared against: `4ħ` for products,
    /// `h/2 = πħ` for ellipsoids and sections.
    pub bound: f64,
    pub lower_bound_met: bool,
    pub equality_case: bool,
}

impl CapacityReport {
    fn new(value: f64, kind: CapacityKind, bound: f64) -> Self {
        Self {
            value,
            kind,
            bound,
            lower_bound_met: value >= bound * (1.0 - CAPACITY_RTOL),
            equality_case: (value - bound).abs() <= CAPACITY_RTOL * bound,
        }
    }
}

/// Capacity of the phase-space ellipsoid `z^T Q z <= 1`: `π / μ_max` with
/// `μ_max` the largest symplectic eigenvalue of `Q`. All symplectic
/// capacities agree on ellipsoids.
pub fn ellipsoid_capacity(e: &Ellipsoid) -> Result<f64> {
    symplectic::half_dimension(e.dim())?;
    let mu = symplectic::symplectic_eigenvalues(e.q())?;
    Ok(PI / mu.max())
}

pub fn ellipsoid_capacity_report(e: &Ellipsoid, hbar: f64) -> Result<CapacityReport> {
    check_hbar(hbar)?;
    Ok(CapacityReport::new(ellipsoid_capacity(e)?, CapacityKind::Ellipsoid, PI * hbar))
}

/// `c_HZ(X × P) = c_max(X × P) = 4ħ · max {λ : λ P^ħ ⊆ X}`.
pub fn product_capacity(x: &ConvexBody, p: &ConvexBody, hbar: f64) -> Result<CapacityReport> {
    let lambda = polar::inclusion_scale(x, p, hbar)?;
    Ok(CapacityReport::new(4.0 * hbar * lambda, CapacityKind::Product, 4.0 * hbar))
}

/// Area of `Ω_Σ` cut by the conjugate plane `(x_j, p_j)` (0-based `j`), with
/// all other coordinates set to zero.
pub fn section_area(sigma: &CovarianceMatrix, j: usize) -> Result<f64> {
    let n = sigma.n();
    if j >= n {
        return Err(Error::InvalidParameter(format!("mode index {j} out of range for n = {n}")));
    }
    let inv = linalg::spd_inverse(sigma.matrix())?;
    let idx = [j, n + j];
    let m = DMatrix::from_fn(2, 2, |a, b| inv[(idx[a], idx[b])]);
    // ½ w^T M w <= 1 is an ellipse of area 2π / sqrt(det M)
    Ok(2.0 * PI / m.determinant().sqrt())
}

/// Area of the orthogonal projection of `Ω_Σ` on the plane `(x_j, p_j)`:
/// `2π sqrt(det Σ_j)` with `Σ_j` the 2x2 covariance block of that mode.
///
/// Unlike [`section_area`], this is at least `πħ` for every quantum
/// covariance matrix, since it restates the Robertson-Schrödinger
/// inequality for mode `j`. Sections of correlated states can be smaller.
pub fn projection_area(sigma: &CovarianceMatrix, j: usize) -> Result<f64> {
    let n = sigma.n();
    if j >= n {
        return Err(Error::InvalidParameter(format!("mode index {j} out of range for n = {n}")));
    }
    let s = sigma.matrix();
    let det = s[(j, j)] * s[(n + j, n + j)] - s[(j, n + j)] * s[(n + j, j)];
    Ok(2.0 * PI * det.sqrt())
}

pub fn section_report(sigma: &CovarianceMatrix, j: usize, hbar: f64) -> Result<CapacityReport> {
    check_hbar(hbar)?;
    Ok(CapacityReport::new(section_area(sigma, j)?, CapacityKind::Section, PI * hbar))
}

/// Half-width of a one-dimensional body.
pub(crate) fn interval_half_width(b: &ConvexBody) -> Result<f64> {
    if b.dim() != 1 {
        return Err(Error::InvalidParameter(format!(
            "expected a one-dimensional interval, got dimension {}",
            b.dim()
        )));
    }
    b.axis_extent(0)
}

/// `Area(X × P) = 4ab` for `X = [-a, a]`, `P = [-b, b]`.
pub fn area_oracle_1d(x: &ConvexBody, p: &ConvexBody) -> Result<f64> {
    Ok(4.0 * interval_half_width(x)? * interval_half_width(p)?)
}
