//! Seeded random matrices for generators, demos and property tests.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::symplectic;

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// Haar-ish orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let signs = DMatrix::from_diagonal(&DVector::from_fn(n, |i, _| r[(i, i)].signum()));
    q * signs
}

/// `Q diag(e^{u_i})` with `u_i` uniform in `[-spread, spread]`.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R, spread: f64) -> DMatrix<f64> {
    let q = random_orthogonal(n, rng);
    let d = DVector::from_fn(n, |_, _| rng.gen_range(-spread..=spread).exp());
    q * DMatrix::from_diagonal(&d)
}

/// Symmetric positive definite matrix `Q diag(e^{u_i}) Q^T`.
pub fn random_spd<R: Rng + ?Sized>(n: usize, rng: &mut R, spread: f64) -> DMatrix<f64> {
    let q = random_orthogonal(n, rng);
    let d = DVector::from_fn(n, |_, _| rng.gen_range(-spread..=spread).exp());
    let m = &q * DMatrix::from_diagonal(&d) * q.transpose();
    (&m + m.transpose()) * 0.5
}

/// Per-mode phase-space rotation by angles `theta_j` in the `(x_j, p_j)` planes.
pub fn mode_rotation(thetas: &[f64]) -> DMatrix<f64> {
    let n = thetas.len();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for (k, t) in thetas.iter().enumerate() {
        let (s, c) = t.sin_cos();
        m[(k, k)] = c;
        m[(k, n + k)] = s;
        m[(n + k, k)] = -s;
        m[(n + k, n + k)] = c;
    }
    m
}

/// Random linear symplectic map built as
/// `M_{L1} R(theta) M_{L2} R(theta') M_{L3}` (optionally times `J`), where
/// `M_L = diag(L^T, L^{-1})` and `R` are per-mode rotations.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let mut m = DMatrix::identity(2 * n, 2 * n);
    for step in 0..3 {
        let l = random_invertible(n, rng, 0.5);
        m *= symplectic::block_symplectic(&l).expect("random_invertible is well conditioned");
        if step < 2 {
            let thetas: Vec<f64> = (0..n)
                .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
                .collect();
            m *= mode_rotation(&thetas);
        }
    }
    if rng.gen_bool(0.5) {
        m *= symplectic::standard_symplectic_matrix(n).expect("n >= 1");
    }
    m
}
