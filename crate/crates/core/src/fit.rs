//! Fitting origin-centered bodies around sample clouds.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::body::{ConvexBody, Ellipsoid, HPolytope};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EllipsoidMode {
    /// Smallest origin-centered ball.
    Ball,
    /// Minimum-volume origin-centered ellipsoid of `{+-p_i}`.
    Mvee,
}

/// Relative volume gap accepted by the MVEE iteration.
pub const MVEE_VOLUME_GAP: f64 = 0.01;
pub const MVEE_MAX_ITER: usize = 100_000;

pub fn centroid(points: &[DVector<f64>]) -> Result<DVector<f64>> {
    let first = points
        .first()
        .ok_or_else(|| Error::Degenerate("empty point list".into()))?;
    let n = first.len();
    let mut sum = DVector::zeros(n);
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        sum += p;
    }
    Ok(sum / points.len() as f64)
}

pub fn centered(points: &[DVector<f64>]) -> Result<(DVector<f64>, Vec<DVector<f64>>)> {
    let c = centroid(points)?;
    let shifted = points.iter().map(|p| p - &c).collect();
    Ok((c, shifted))
}

fn scatter(points: &[DVector<f64>]) -> DMatrix<f64> {
    let n = points[0].len();
    let mut s = DMatrix::zeros(n, n);
    for p in points {
        s += p * p.transpose();
    }
    s
}

fn check_rank(points: &[DVector<f64>]) -> Result<()> {
    let s = scatter(points);
    let ev = linalg::sym_eigenvalues_sorted(&s);
    let top = *ev.last().expect("non-empty");
    if !(top > 0.0) || ev[0] <= 1e-12 * top {
        return Err(Error::Degenerate("points do not span the space after centering".into()));
    }
    Ok(())
}

/// Origin-centered ellipsoid enclosing the points after centering at their
/// centroid.
pub fn enclosing_ellipsoid(points: &[DVector<f64>], mode: EllipsoidMode) -> Result<Ellipsoid> {
    let (_, pts) = centered(points)?;
    check_rank(&pts)?;
    let n = pts[0].len();
    match mode {
        EllipsoidMode::Ball => {
            let r = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
            Ellipsoid::ball(n, r)
        }
        EllipsoidMode::Mvee => symmetric_mvee(&pts),
    }
}

/// Khachiyan-style coordinate ascent on the D-optimal design weights of the
/// symmetric set `{+-p_i}`. The returned ellipsoid is `x^T X(u)^{-1} x <= M`
/// with `M = max_i p_i^T X(u)^{-1} p_i`, so it always contains every point and
/// its volume exceeds the optimum by at most `(M/n)^{n/2}`.
fn symmetric_mvee(pts: &[DVector<f64>]) -> Result<Ellipsoid> {
    let n = pts[0].len();
    let m = pts.len();
    let eps = (1.0 + MVEE_VOLUME_GAP).powf(2.0 / n as f64) - 1.0;
    let mut u = vec![1.0 / m as f64; m];

    let design = |u: &[f64]| {
        let mut x = DMatrix::zeros(n, n);
        for (w, p) in u.iter().zip(pts) {
            x += p * p.transpose() * *w;
        }
        x
    };

    for _ in 0..MVEE_MAX_ITER {
        let x = design(&u);
        let x_inv = linalg::spd_inverse(&x)?;
        let (j, mj) = pts
            .iter()
            .map(|p| p.dot(&(&x_inv * p)))
            .enumerate()
            .fold((0, f64::MIN), |best, (i, v)| if v > best.1 { (i, v) } else { best });
        if mj <= n as f64 * (1.0 + eps) {
            return Ellipsoid::new(x_inv / mj);
        }
        let nf = n as f64;
        let alpha = (mj / nf - 1.0) / (mj - 1.0);
        for w in u.iter_mut() {
            *w *= 1.0 - alpha;
        }
        u[j] += alpha;
    }
    let x_inv = linalg::spd_inverse(&design(&u))?;
    let mj = pts.iter().map(|p| p.dot(&(&x_inv * p))).fold(0.0, f64::max);
    Ellipsoid::new(x_inv / mj)
}

/// Per-coordinate symmetric box `prod [-max|x_j|, max|x_j|]` after centering.
pub fn enclosing_box(points: &[DVector<f64>]) -> Result<HPolytope> {
    let (_, pts) = centered(points)?;
    check_rank(&pts)?;
    let n = pts[0].len();
    let half: Vec<f64> = (0..n)
        .map(|j| pts.iter().map(|p| p[j].abs()).fold(0.0, f64::max))
        .collect();
    HPolytope::from_box(&half)
}

/// Fitting strategy for clouds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitMode {
    Ball,
    Mvee,
    IntervalBox,
}

pub fn fit_body(points: &[DVector<f64>], mode: FitMode) -> Result<ConvexBody> {
    Ok(match mode {
        FitMode::Ball => enclosing_ellipsoid(points, EllipsoidMode::Ball)?.into(),
        FitMode::Mvee => enclosing_ellipsoid(points, EllipsoidMode::Mvee)?.into(),
        FitMode::IntervalBox => enclosing_box(points)?.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(xs)
    }

    #[test]
    fn ball_of_cross() {
        let pts = vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, -1.0])];
        let e = enclosing_ellipsoid(&pts, EllipsoidMode::Ball).unwrap();
        assert!((e.q() - DMatrix::identity(2, 2)).abs().max() < 1e-14);
    }

    #[test]
    fn ball_of_square_corners() {
        let pts = vec![v(&[1.0, 1.0]), v(&[-1.0, 1.0]), v(&[1.0, -1.0]), v(&[-1.0, -1.0])];
        let e = enclosing_ellipsoid(&pts, EllipsoidMode::Ball).unwrap();
        assert!((e.q()[(0, 0)] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn mvee_axis_aligned() {
        let pts = vec![v(&[2.0, 0.0]), v(&[-2.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, -1.0])];
        let e = enclosing_ellipsoid(&pts, EllipsoidMode::Mvee).unwrap();
        let want = DMatrix::from_diagonal(&v(&[0.25, 1.0]));
        assert!((e.q() - want).abs().max() < 1e-9, "{}", e.q());
    }

    /// Volume oracle: no axis-aligned or rotated ellipsoid that contains the
    /// points is noticeably smaller than the fitted one (grid search).
    #[test]
    fn mvee_beats_grid_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let pts: Vec<_> = (0..40)
            .map(|_| v(&[rng.gen_range(-2.0..2.0), rng.gen_range(-0.7..0.7)]))
            .collect();
        let (_, centered_pts) = centered(&pts).unwrap();
        let e = enclosing_ellipsoid(&pts, EllipsoidMode::Mvee).unwrap();
        for p in &centered_pts {
            assert!(p.dot(&(e.q() * p)) <= 1.0 + 1e-12);
        }
        let fitted_det = e.q().determinant();
        let mut best_det = 0.0_f64;
        for it in 0..180 {
            let t = std::f64::consts::PI * it as f64 / 180.0;
            let (s, c) = t.sin_cos();
            let rot = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
            for ia in 1..=60 {
                let a = 0.02 * ia as f64;
                // smallest b so that the ellipse with axes 1/a, 1/b (in rotated frame) holds all
                let b2 = centered_pts
                    .iter()
                    .map(|p| {
                        let r = rot.transpose() * p;
                        let rem = 1.0 - a * a * r[0] * r[0];
                        if rem <= 0.0 { f64::INFINITY } else { r[1] * r[1] / rem }
                    })
                    .fold(0.0, f64::max);
                if b2.is_finite() && b2 > 0.0 {
                    best_det = best_det.max(a * a / b2);
                }
            }
        }
        // det Q larger means smaller volume; fitted must be within 1% volume.
        assert!(fitted_det.sqrt() >= best_det.sqrt() / 1.01, "{fitted_det} vs {best_det}");
    }

    #[test]
    fn degenerate_rejected() {
        let pts = vec![v(&[1.0, 1.0]), v(&[2.0, 2.0]), v(&[3.0, 3.0])];
        assert!(matches!(
            enclosing_ellipsoid(&pts, EllipsoidMode::Ball),
            Err(Error::Degenerate(_))
        ));
        assert!(enclosing_ellipsoid(&[], EllipsoidMode::Mvee).is_err());
    }

    #[test]
    fn box_fit() {
        let pts = vec![v(&[1.0, 0.5]), v(&[-1.0, -0.5]), v(&[0.2, -0.1]), v(&[-0.2, 0.1])];
        let b: ConvexBody = enclosing_box(&pts).unwrap().into();
        assert!((b.axis_extent(0).unwrap() - 1.0).abs() < 1e-14);
        assert!((b.axis_extent(1).unwrap() - 0.5).abs() < 1e-14);
    }
}
