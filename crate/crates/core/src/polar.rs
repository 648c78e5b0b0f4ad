//! ħ-polar duality and the quantum-pair relation.
//!
//! For a symmetric body `X`, `X^ħ = {p : p^T x <= ħ for all x in X}`. The map
//! is an involution on symmetric convex bodies, reverses inclusions and sends
//! `L X` to `L^{-T} X^ħ`.

use serde::{Deserialize, Serialize};

use crate::body::{ConvexBody, Ellipsoid, HPolytope, VPolytope};
use crate::containment::{self, DEFAULT_TOL};
use crate::error::{Error, Result};

pub(crate) fn check_hbar(hbar: f64) -> Result<()> {
    if hbar > 0.0 && hbar.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("hbar must be positive and finite, got {hbar}")))
    }
}

/// The ħ-polar dual `X^ħ`.
///
/// * ellipsoid `x^T Q x <= 1` maps to `p^T (Q^{-1} / ħ^2) p <= 1`
/// * H-rows `a_i` map to V-vertices `ħ a_i`
/// * V-vertices `v_j` map to H-rows `v_j / ħ`
pub fn polar_dual(body: &ConvexBody, hbar: f64) -> Result<ConvexBody> {
    check_hbar(hbar)?;
    Ok(match body {
        ConvexBody::Ellipsoid(e) => {
            Ellipsoid::from_inverse(e.q() * (hbar * hbar))?.into()
        }
        ConvexBody::HPolytope(h) => {
            VPolytope::new(h.rows().iter().map(|a| a * hbar).collect())?.into()
        }
        ConvexBody::VPolytope(v) => {
            HPolytope::new(v.vertices().iter().map(|x| x / hbar).collect())?.into()
        }
    })
}

/// Outcome of a quantum-pair test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub is_pair: bool,
    /// `max {λ > 0 : λ P^ħ ⊆ X}`.
    pub lambda_max: f64,
    /// `lambda_max - 1`; non-negative exactly for pairs.
    pub margin: f64,
    /// Product capacity `4 ħ lambda_max` of `X × P`.
    pub capacity: f64,
    /// Whether only exact containment paths were used.
    pub exact: bool,
}

/// `max {λ > 0 : λ P^ħ ⊆ X}` together with its exactness flag.
pub fn inclusion_scale_detailed(
    x: &ConvexBody,
    p: &ConvexBody,
    hbar: f64,
) -> Result<(f64, bool)> {
    check_hbar(hbar)?;
    if x.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: p.dim(),
        });
    }
    let p_dual = polar_dual(p, hbar)?;
    let r = containment::containment_ratio(x, &p_dual)?;
    if !(r.value > 0.0 && r.value.is_finite()) {
        return Err(Error::Degenerate("containment ratio is not positive".into()));
    }
    Ok((1.0 / r.value, r.exact))
}

pub fn inclusion_scale(x: &ConvexBody, p: &ConvexBody, hbar: f64) -> Result<f64> {
    inclusion_scale_detailed(x, p, hbar).map(|(l, _)| l)
}

/// Decides whether `(X, P)` is a ħ-polar quantum pair, i.e. `X^ħ ⊆ P`.
///
/// The boundary `X^ħ = P` counts as a pair.
pub fn is_quantum_pair(x: &ConvexBody, p: &ConvexBody, hbar: f64, tol: f64) -> Result<PairVerdict> {
    check_hbar(hbar)?;
    if x.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: p.dim(),
        });
    }
    let x_dual = polar_dual(x, hbar)?;
    let c = containment::contains(p, &x_dual, tol)?;
    let (lambda_max, exact_scale) = inclusion_scale_detailed(x, p, hbar)?;
    Ok(PairVerdict {
        is_pair: c.contained,
        lambda_max,
        margin: lambda_max - 1.0,
        capacity: 4.0 * hbar * lambda_max,
        exact: c.exact && exact_scale,
    })
}

pub fn is_quantum_pair_default(x: &ConvexBody, p: &ConvexBody, hbar: f64) -> Result<PairVerdict> {
    is_quantum_pair(x, p, hbar, DEFAULT_TOL)
}
