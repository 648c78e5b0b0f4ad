//! Coordinate-plane sections of bodies and Lagrangian products, emitted as
//! closed polylines for plotting.
//!
//! Text format:
//!
//! ```text
//! # section plane=0,1 source=ellipsoid points=256 closed=true
//! # area=3.141277
//! u,v
//! 1,0
//! ...
//! ```
//!
//! The polyline is closed implicitly (last point connects to the first) and
//! `area` is the shoelace area of the emitted polygon.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::body::{enumerate_vertices, ConvexBody};
use crate::error::{Error, Result};

/// Number of polyline points for smooth boundaries.
pub const SMOOTH_POINTS: usize = 256;

#[derive(Debug, Clone)]
pub enum SectionSource {
    Body(ConvexBody),
    /// `X × P` in phase space `(x_1..x_n, p_1..p_n)`.
    Product(ConvexBody, ConvexBody),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionPlot {
    pub plane: (usize, usize),
    pub source: String,
    pub points: Vec<[f64; 2]>,
    pub area: f64,
}

impl SectionPlot {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# section plane={},{} source={} points={} closed=true\n# area={}\nu,v\n",
            self.plane.0,
            self.plane.1,
            self.source,
            self.points.len(),
            self.area
        );
        for [u, v] in &self.points {
            s += &format!("{u},{v}\n");
        }
        s
    }
}

fn shoelace(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    let twice: f64 = (0..n)
        .map(|k| {
            let [x0, y0] = points[k];
            let [x1, y1] = points[(k + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    0.5 * twice.abs()
}

fn smooth_section(body: &ConvexBody, i: usize, j: usize) -> Result<Vec<[f64; 2]>> {
    let dim = body.dim();
    (0..SMOOTH_POINTS)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / SMOOTH_POINTS as f64;
            let mut e = DVector::zeros(dim);
            e[i] = t.cos();
            e[j] = t.sin();
            let r = 1.0 / body.gauge(&e)?;
            Ok([r * t.cos(), r * t.sin()])
        })
        .collect()
}

/// Polygon `{w : |a_k^T w| <= 1}` in the plane, vertices in angular order.
fn polygon_from_rows(rows: &[DVector<f64>]) -> Result<Vec<[f64; 2]>> {
    let scale = rows.iter().map(|r| r.amax()).fold(0.0, f64::max);
    let rows: Vec<DVector<f64>> = rows.iter().filter(|r| r.amax() > 1e-14 * scale).cloned().collect();
    let reps = enumerate_vertices(&rows, 2)?;
    let mut pts: Vec<[f64; 2]> = reps
        .iter()
        .flat_map(|v| [[v[0], v[1]], [-v[0], -v[1]]])
        .collect();
    pts.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
    Ok(pts)
}

fn body_section(body: &ConvexBody, i: usize, j: usize) -> Result<Vec<[f64; 2]>> {
    let restrict = |vs: &[DVector<f64>]| -> Vec<DVector<f64>> {
        vs.iter().map(|v| DVector::from_vec(vec![v[i], v[j]])).collect()
    };
    match body {
        ConvexBody::Ellipsoid(_) => smooth_section(body, i, j),
        ConvexBody::HPolytope(h) => polygon_from_rows(&restrict(h.rows())),
        ConvexBody::VPolytope(v) => polygon_from_rows(&restrict(v.facets()?)),
    }
}

fn check_plane(dim: usize, plane: (usize, usize)) -> Result<()> {
    let (i, j) = plane;
    if i >= dim || j >= dim || i == j {
        return Err(Error::InvalidParameter(format!(
            "plane ({i}, {j}) invalid for dimension {dim}"
        )));
    }
    Ok(())
}

/// Boundary of the section of `source` by the coordinate plane `(i, j)`.
pub fn section_plot(source: &SectionSource, plane: (usize, usize)) -> Result<SectionPlot> {
    let (i, j) = plane;
    let (points, label) = match source {
        SectionSource::Body(b) => {
            check_plane(b.dim(), plane)?;
            (body_section(b, i, j)?, b.kind().to_string())
        }
        SectionSource::Product(x, p) => {
            let n = x.dim();
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                });
            }
            check_plane(2 * n, plane)?;
            let label = format!("product({}x{})", x.kind(), p.kind());
            let pts = match (i < n, j < n) {
                (true, true) => body_section(x, i, j)?,
                (false, false) => body_section(p, i - n, j - n)?,
                _ => {
                    let extent = |k: usize| if k < n { x.axis_extent(k) } else { p.axis_extent(k - n) };
                    let (a, b) = (extent(i)?, extent(j)?);
                    vec![[a, b], [-a, b], [-a, -b], [a, -b]]
                }
            };
            (pts, label)
        }
    };
    Ok(SectionPlot {
        plane,
        source: label,
        area: shoelace(&points),
        points,
    })
}

/// Section of a 2-D ellipsoid given directly by its matrix (helper for the
/// covariance ellipse).
pub fn ellipse_section(q: &DMatrix<f64>) -> Result<SectionPlot> {
    let e = crate::body::Ellipsoid::new(q.clone())?;
    section_plot(&SectionSource::Body(e.into()), (0, 1))
}
