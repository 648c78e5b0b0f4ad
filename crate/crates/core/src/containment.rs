//! Containment between symmetric convex bodies.
//!
//! Everything reduces to the containment ratio
//! `rho(outer, inner) = min {t > 0 : inner ⊆ t * outer} = sup_{y in inner} gauge_outer(y)`.
//! It is computed exactly whenever the needed vertices or facets can be
//! enumerated, and by sampling a fixed direction set otherwise.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::body::{ConvexBody, Ellipsoid};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sample;

/// Default relative containment tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default size of the sampled direction set.
pub const DEFAULT_DIRECTIONS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio {
    pub value: f64,
    /// `false` when the sampled fallback was used; the value is then a lower
    /// bound on the true ratio.
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment {
    pub contained: bool,
    pub ratio: f64,
    pub exact: bool,
}

/// True iff `inner ⊆ (1 + tol) * outer`.
pub fn contains(outer: &ConvexBody, inner: &ConvexBody, tol: f64) -> Result<Containment> {
    contains_with(outer, inner, tol, DEFAULT_DIRECTIONS)
}

pub fn contains_with(
    outer: &ConvexBody,
    inner: &ConvexBody,
    tol: f64,
    directions: usize,
) -> Result<Containment> {
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be >= 0, got {tol}")));
    }
    let r = containment_ratio_with(outer, inner, directions)?;
    Ok(Containment {
        contained: r.value <= 1.0 + tol,
        ratio: r.value,
        exact: r.exact,
    })
}

pub fn containment_ratio(outer: &ConvexBody, inner: &ConvexBody) -> Result<Ratio> {
    containment_ratio_with(outer, inner, DEFAULT_DIRECTIONS)
}

pub fn containment_ratio_with(
    outer: &ConvexBody,
    inner: &ConvexBody,
    directions: usize,
) -> Result<Ratio> {
    if outer.dim() != inner.dim() {
        return Err(Error::DimensionMismatch {
            expected: outer.dim(),
            found: inner.dim(),
        });
    }
    if let Some(value) = exact_ratio(outer, inner)? {
        return Ok(Ratio { value, exact: true });
    }
    sampled_ratio(outer, inner, directions).map(|value| Ratio { value, exact: false })
}

fn exact_ratio(outer: &ConvexBody, inner: &ConvexBody) -> Result<Option<f64>> {
    use ConvexBody::*;

    let outer_gauge_exact = match outer {
        VPolytope(v) => v.facets_available(),
        _ => true,
    };

    let value = match (outer, inner) {
        (Ellipsoid(o), Ellipsoid(i)) => ellipsoid_ratio(o, i)?,
        (_, VPolytope(v)) if outer_gauge_exact => max_gauge(outer, v.vertices())?,
        (_, HPolytope(h)) if outer_gauge_exact && h.vertices_available() => {
            max_gauge(outer, h.vertices()?)?
        }
        (HPolytope(h), Ellipsoid(_)) => max_support(inner, h.rows())?,
        (VPolytope(v), Ellipsoid(_)) if v.facets_available() => max_support(inner, v.facets()?)?,
        _ => return Ok(None),
    };
    Ok(Some(value))
}

/// `sqrt(lambda_max(Q_outer, Q_inner))` via the Cholesky factor of `Q_inner`.
fn ellipsoid_ratio(outer: &Ellipsoid, inner: &Ellipsoid) -> Result<f64> {
    let chol = inner.q().clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l_inv = chol
        .l()
        .solve_lower_triangular(&DMatrix::identity(inner.dim(), inner.dim()))
        .ok_or(Error::Singular)?;
    let m = &l_inv * outer.q() * l_inv.transpose();
    let m = (&m + m.transpose()) * 0.5;
    let top = *linalg::sym_eigenvalues_sorted(&m).last().expect("non-empty");
    Ok(top.max(0.0).sqrt())
}

fn max_gauge(body: &ConvexBody, points: &[DVector<f64>]) -> Result<f64> {
    points
        .iter()
        .try_fold(0.0_f64, |acc, p| Ok(acc.max(body.gauge(p)?)))
}

fn max_support(body: &ConvexBody, dirs: &[DVector<f64>]) -> Result<f64> {
    dirs.iter()
        .try_fold(0.0_f64, |acc, d| Ok(acc.max(body.support(d)?)))
}

/// Fixed unit direction set: evenly spaced half-circle angles for `n = 2`,
/// seeded Gaussian directions otherwise.
pub fn direction_set(n: usize, count: usize) -> Vec<DVector<f64>> {
    match n {
        1 => vec![DVector::from_element(1, 1.0)],
        2 => (0..count)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / count as f64;
                DVector::from_vec(vec![t.cos(), t.sin()])
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..count)
                .map(|_| {
                    let g = sample::gaussian_vector(n, &mut rng);
                    let norm = g.norm();
                    g / norm
                })
                .collect()
        }
    }
}

fn cheap_support(b: &ConvexBody) -> bool {
    match b {
        ConvexBody::HPolytope(h) => h.vertices_available(),
        _ => true,
    }
}

fn cheap_gauge(b: &ConvexBody) -> bool {
    match b {
        ConvexBody::VPolytope(v) => v.facets_available(),
        _ => true,
    }
}

fn sampled_ratio(outer: &ConvexBody, inner: &ConvexBody, count: usize) -> Result<f64> {
    let dirs = direction_set(outer.dim(), count.max(1));
    if cheap_support(outer) && cheap_support(inner) {
        // inner ⊆ t outer  <=>  h_inner <= t h_outer in every direction
        dirs.iter().try_fold(0.0_f64, |acc, u| {
            Ok(acc.max(inner.support(u)? / outer.support(u)?))
        })
    } else if cheap_gauge(outer) && cheap_gauge(inner) {
        dirs.iter().try_fold(0.0_f64, |acc, u| {
            let boundary = u / inner.gauge(u)?;
            Ok(acc.max(outer.gauge(&boundary)?))
        })
    } else {
        let m = match inner {
            ConvexBody::HPolytope(h) => h.rows().len(),
            _ => 0,
        };
        Err(Error::EnumerationBudget {
            combinations: crate::body::enumeration_cost(m, inner.dim()),
        })
    }
}
