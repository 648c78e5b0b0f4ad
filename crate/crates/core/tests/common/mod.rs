//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use hbar_polar::body::{ConvexBody, Ellipsoid, HPolytope, VPolytope};
use hbar_polar::sample;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Ellipsoid,
    HPoly,
    VPoly,
}

pub const KINDS: [Kind; 3] = [Kind::Ellipsoid, Kind::HPoly, Kind::VPoly];

fn spanning_vectors(n: usize, rng: &mut ChaCha8Rng) -> Vec<DVector<f64>> {
    let m = n + rng.gen_range(0..=3);
    (0..m)
        .map(|_| sample::gaussian_vector(n, rng) * rng.gen_range(-0.5f64..0.5).exp())
        .collect()
}

/// Random centrally symmetric body of the given representation.
pub fn random_body(kind: Kind, n: usize, rng: &mut ChaCha8Rng) -> ConvexBody {
    loop {
        let body: hbar_polar::Result<ConvexBody> = match kind {
            Kind::Ellipsoid => Ellipsoid::new(sample::random_spd(n, rng, 1.0)).map(Into::into),
            Kind::HPoly => HPolytope::new(spanning_vectors(n, rng)).map(Into::into),
            Kind::VPoly => VPolytope::new(spanning_vectors(n, rng)).map(Into::into),
        };
        if let Ok(b) = body {
            return b;
        }
    }
}

pub fn random_kind(rng: &mut ChaCha8Rng) -> Kind {
    KINDS[rng.gen_range(0..3)]
}

pub fn diag(v: &[f64]) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(v))
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
