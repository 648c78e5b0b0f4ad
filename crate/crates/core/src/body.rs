//! Origin-centered, centrally symmetric convex bodies.
//!
//! Three representations are supported:
//!
//! * [`Ellipsoid`]: `{x : x^T Q x <= 1}` with `Q` symmetric positive definite.
//! * [`HPolytope`]: `{x : |a_i^T x| <= 1 for all i}`.
//! * [`VPolytope`]: the convex hull of `{+-v_j}`.
//!
//! Polytope vertices (for H) and facet normals (for V) are enumerated lazily
//! and cached. Enumeration walks every `n`-subset of constraints, so it is
//! bounded by [`ENUMERATION_BUDGET`]; beyond it callers fall back to sampled
//! directions.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Maximum `C(m, n) * 2^(n-1)` linear solves spent on vertex enumeration.
pub const ENUMERATION_BUDGET: u128 = 2_000_000;

const FEASIBILITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct Ellipsoid {
    q: DMatrix<f64>,
    q_inv: DMatrix<f64>,
}

impl Ellipsoid {
    /// `{x : x^T q x <= 1}`.
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        let q = linalg::spd_checked(&q)?;
        let q_inv = linalg::spd_inverse(&q)?;
        Ok(Self { q, q_inv })
    }

    /// Euclidean ball `|x| <= r`.
    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || dim == 0 {
            return Err(Error::InvalidParameter(format!(
                "ball needs dim >= 1 and radius > 0 (got {dim}, {radius})"
            )));
        }
        Self::new(DMatrix::from_diagonal_element(dim, dim, radius.powi(-2)))
    }

    /// `B_A(R) = {x : x^T A x <= R^2}`.
    pub fn from_shape(a: &DMatrix<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("radius must be > 0, got {radius}")));
        }
        Self::new(a / (radius * radius))
    }

    /// Inverse of the shape matrix, i.e. the support-function quadratic form.
    pub fn from_inverse(q_inv: DMatrix<f64>) -> Result<Self> {
        let q_inv = linalg::spd_checked(&q_inv)?;
        let q = linalg::spd_inverse(&q_inv)?;
        Ok(Self { q, q_inv })
    }

    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn q_inv(&self) -> &DMatrix<f64> {
        &self.q_inv
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }

    /// Volume relative to the unit ball: `det(Q)^{-1/2}`.
    pub fn volume_ratio(&self) -> f64 {
        self.q.determinant().sqrt().recip()
    }
}

#[derive(Debug, Clone)]
pub struct HPolytope {
    rows: Vec<DVector<f64>>,
    vertices: OnceLock<Vec<DVector<f64>>>,
}

impl HPolytope {
    /// `{x : |a_i^T x| <= 1}`. Rows must be non-zero and span `R^n`.
    pub fn new(rows: Vec<DVector<f64>>) -> Result<Self> {
        validate_spanning(&rows, "H-polytope rows")?;
        Ok(Self {
            rows,
            vertices: OnceLock::new(),
        })
    }

    /// Axis-aligned box `prod [-h_i, h_i]`.
    pub fn from_box(half_widths: &[f64]) -> Result<Self> {
        let n = half_widths.len();
        if half_widths.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
            return Err(Error::InvalidParameter("box half-widths must be > 0".into()));
        }
        let rows = half_widths
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let mut r = DVector::zeros(n);
                r[i] = 1.0 / h;
                r
            })
            .collect();
        Self::new(rows)
    }

    /// Symmetric interval `[-a, a]`.
    pub fn interval(half_width: f64) -> Result<Self> {
        Self::from_box(&[half_width])
    }

    pub fn rows(&self) -> &[DVector<f64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows[0].len()
    }

    /// One representative of each `+-` vertex pair.
    pub fn vertices(&self) -> Result<&[DVector<f64>]> {
        if let Some(v) = self.vertices.get() {
            return Ok(v);
        }
        let v = enumerate_vertices(&self.rows, self.dim())?;
        Ok(self.vertices.get_or_init(|| v))
    }

    pub fn vertices_available(&self) -> bool {
        self.vertices.get().is_some()
            || enumeration_cost(self.rows.len(), self.dim()) <= ENUMERATION_BUDGET
    }
}

#[derive(Debug, Clone)]
pub struct VPolytope {
    vertices: Vec<DVector<f64>>,
    facets: OnceLock<Vec<DVector<f64>>>,
}

impl VPolytope {
    /// `conv{+-v_j}`. Vertices must be non-zero and span `R^n`.
    pub fn new(vertices: Vec<DVector<f64>>) -> Result<Self> {
        validate_spanning(&vertices, "V-polytope vertices")?;
        Ok(Self {
            vertices,
            facets: OnceLock::new(),
        })
    }

    /// Cross-polytope `conv{+-r_i e_i}`.
    pub fn cross(radii: &[f64]) -> Result<Self> {
        let n = radii.len();
        let vertices = radii
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = DVector::zeros(n);
                v[i] = *r;
                v
            })
            .collect();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// Facet normals `w` such that the body is `{x : |w^T x| <= 1}`.
    pub fn facets(&self) -> Result<&[DVector<f64>]> {
        if let Some(f) = self.facets.get() {
            return Ok(f);
        }
        // Facets of conv{+-v} are the vertices of {y : |v^T y| <= 1}.
        let f = enumerate_vertices(&self.vertices, self.dim())?;
        Ok(self.facets.get_or_init(|| f))
    }

    pub fn facets_available(&self) -> bool {
        self.facets.get().is_some()
            || enumeration_cost(self.vertices.len(), self.dim()) <= ENUMERATION_BUDGET
    }
}

/// A centrally symmetric convex body in one of the supported representations.
#[derive(Debug, Clone)]
pub enum ConvexBody {
    Ellipsoid(Ellipsoid),
    HPolytope(HPolytope),
    VPolytope(VPolytope),
}

impl From<Ellipsoid> for ConvexBody {
    fn from(e: Ellipsoid) -> Self {
        ConvexBody::Ellipsoid(e)
    }
}

impl From<HPolytope> for ConvexBody {
    fn from(h: HPolytope) -> Self {
        ConvexBody::HPolytope(h)
    }
}

impl From<VPolytope> for ConvexBody {
    fn from(v: VPolytope) -> Self {
        ConvexBody::VPolytope(v)
    }
}

fn check_len(expected: usize, v: &DVector<f64>) -> Result<()> {
    if v.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

impl ConvexBody {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Ellipsoid(e) => e.dim(),
            ConvexBody::HPolytope(h) => h.dim(),
            ConvexBody::VPolytope(v) => v.dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Ellipsoid(_) => "ellipsoid",
            ConvexBody::HPolytope(_) => "hpoly",
            ConvexBody::VPolytope(_) => "vpoly",
        }
    }

    /// Support function `h(u) = max {u^T x : x in body}`.
    pub fn support(&self, u: &DVector<f64>) -> Result<f64> {
        check_len(self.dim(), u)?;
        Ok(match self {
            ConvexBody::Ellipsoid(e) => u.dot(&(e.q_inv() * u)).max(0.0).sqrt(),
            ConvexBody::VPolytope(v) => max_abs_dot(v.vertices(), u),
            ConvexBody::HPolytope(h) => max_abs_dot(h.vertices()?, u),
        })
    }

    /// Gauge (Minkowski norm) `inf {t > 0 : x / t in body}`.
    pub fn gauge(&self, x: &DVector<f64>) -> Result<f64> {
        check_len(self.dim(), x)?;
        Ok(match self {
            ConvexBody::Ellipsoid(e) => x.dot(&(e.q() * x)).max(0.0).sqrt(),
            ConvexBody::HPolytope(h) => max_abs_dot(h.rows(), x),
            ConvexBody::VPolytope(v) => max_abs_dot(v.facets()?, x),
        })
    }

    pub fn contains_point(&self, x: &DVector<f64>, tol: f64) -> Result<bool> {
        Ok(self.gauge(x)? <= 1.0 + tol)
    }

    /// Image `L X` under an invertible linear map.
    pub fn linear_image(&self, l: &DMatrix<f64>) -> Result<ConvexBody> {
        let n = linalg::check_square(l)?;
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        let l_inv = linalg::invert(l)?;
        Ok(match self {
            ConvexBody::Ellipsoid(e) => {
                let q = l_inv.transpose() * e.q() * &l_inv;
                Ellipsoid::new((&q + q.transpose()) * 0.5)?.into()
            }
            ConvexBody::HPolytope(h) => {
                let lt = l_inv.transpose();
                HPolytope::new(h.rows().iter().map(|a| &lt * a).collect())?.into()
            }
            ConvexBody::VPolytope(v) => {
                VPolytope::new(v.vertices().iter().map(|x| l * x).collect())?.into()
            }
        })
    }

    /// `lambda X` for `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<ConvexBody> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale must be > 0, got {lambda}")));
        }
        Ok(match self {
            ConvexBody::Ellipsoid(e) => Ellipsoid::new(e.q() / (lambda * lambda))?.into(),
            ConvexBody::HPolytope(h) => {
                HPolytope::new(h.rows().iter().map(|a| a / lambda).collect())?.into()
            }
            ConvexBody::VPolytope(v) => {
                VPolytope::new(v.vertices().iter().map(|x| x * lambda).collect())?.into()
            }
        })
    }

    /// Half-length of the body along the unit vector `e_axis`.
    pub fn axis_extent(&self, axis: usize) -> Result<f64> {
        let n = self.dim();
        if axis >= n {
            return Err(Error::InvalidParameter(format!("axis {axis} out of range for dim {n}")));
        }
        let mut e = DVector::zeros(n);
        e[axis] = 1.0;
        Ok(1.0 / self.gauge(&e)?)
    }

    /// Representation-level equality: same tag, and matrices / vector sets
    /// equal up to reordering and sign within `rtol`.
    pub fn approx_eq(&self, other: &ConvexBody, rtol: f64) -> bool {
        match (self, other) {
            (ConvexBody::Ellipsoid(a), ConvexBody::Ellipsoid(b)) => {
                a.dim() == b.dim() && {
                    let scale = linalg::max_abs(a.q()).max(linalg::max_abs(b.q()));
                    linalg::max_abs(&(a.q() - b.q())) <= rtol * scale
                }
            }
            (ConvexBody::HPolytope(a), ConvexBody::HPolytope(b)) => {
                same_vector_set(a.rows(), b.rows(), rtol)
            }
            (ConvexBody::VPolytope(a), ConvexBody::VPolytope(b)) => {
                same_vector_set(a.vertices(), b.vertices(), rtol)
            }
            _ => false,
        }
    }
}

fn max_abs_dot(vs: &[DVector<f64>], u: &DVector<f64>) -> f64 {
    vs.iter().fold(0.0_f64, |acc, v| acc.max(v.dot(u).abs()))
}

/// True iff every vector of `a` matches some `+-` vector of `b` and vice versa.
pub(crate) fn same_vector_set(a: &[DVector<f64>], b: &[DVector<f64>], rtol: f64) -> bool {
    let covered = |xs: &[DVector<f64>], ys: &[DVector<f64>]| {
        xs.iter().all(|x| {
            let scale = x.amax().max(f64::MIN_POSITIVE);
            ys.iter().any(|y| {
                y.len() == x.len()
                    && ((x - y).amax() <= rtol * scale || (x + y).amax() <= rtol * scale)
            })
        })
    };
    covered(a, b) && covered(b, a)
}

fn validate_spanning(vs: &[DVector<f64>], what: &str) -> Result<()> {
    let Some(first) = vs.first() else {
        return Err(Error::Degenerate(format!("{what}: empty list")));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::Degenerate(format!("{what}: zero dimension")));
    }
    for v in vs {
        check_len(n, v)?;
        if v.amax() == 0.0 {
            return Err(Error::Degenerate(format!("{what}: zero vector")));
        }
    }
    let mut gram = DMatrix::zeros(n, n);
    for v in vs {
        let u = v / v.norm();
        gram += &u * u.transpose();
    }
    let ev = linalg::sym_eigenvalues_sorted(&gram);
    if ev[0] <= 1e-12 * ev[n - 1] {
        return Err(Error::Degenerate(format!("{what} do not span R^{n}")));
    }
    Ok(())
}

fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub(crate) fn enumeration_cost(m: usize, n: usize) -> u128 {
    binomial(m, n).saturating_mul(1u128 << (n.saturating_sub(1)).min(100))
}

/// Vertices of `{x : |a_i^T x| <= 1}`, one per `+-` pair, with canonical sign
/// (first non-negligible coordinate positive).
pub(crate) fn enumerate_vertices(rows: &[DVector<f64>], n: usize) -> Result<Vec<DVector<f64>>> {
    let m = rows.len();
    let cost = enumeration_cost(m, n);
    if cost > ENUMERATION_BUDGET {
        return Err(Error::EnumerationBudget { combinations: cost });
    }
    let mut out: Vec<DVector<f64>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let a = DMatrix::from_fn(n, n, |i, j| rows[subset[i]][j]);
        let lu = a.clone().lu();
        let det = lu.determinant();
        let scale: f64 = subset.iter().map(|&i| rows[i].norm()).product();
        if det.abs() > 1e-12 * scale {
            for pattern in 0..(1usize << (n - 1)) {
                let rhs = DVector::from_fn(n, |i, _| {
                    if i > 0 && pattern & (1 << (i - 1)) != 0 {
                        -1.0
                    } else {
                        1.0
                    }
                });
                let Some(x) = lu.solve(&rhs) else { continue };
                let feasible = rows.iter().all(|r| r.dot(&x).abs() <= 1.0 + FEASIBILITY_TOL);
                if feasible {
                    let x = canonical_sign(x);
                    let tol = 1e-9 * x.amax().max(1e-300);
                    if !out.iter().any(|y| (y - &x).amax() <= tol) {
                        out.push(x);
                    }
                }
            }
        }
        if !next_combination(&mut subset, m) {
            break;
        }
    }
    if out.is_empty() {
        return Err(Error::Degenerate("no vertices found".into()));
    }
    Ok(out)
}

fn canonical_sign(x: DVector<f64>) -> DVector<f64> {
    let scale = x.amax();
    match x.iter().find(|v| v.abs() > 1e-12 * scale) {
        Some(v) if *v < 0.0 => -x,
        _ => x,
    }
}

fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
