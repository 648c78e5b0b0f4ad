//! Hardy's uncertainty principle at desk scale: the discrete ħ-Fourier
//! transform of a Gaussian, envelope checks, and the eigenvalue criterion
//! on `(A, B)`.
//!
//! Run with `cargo run --example hardy_fourier`.

use hbar_polar::hardy::{
    hardy_check, hardy_envelope_verify, hbar_fourier_1d, sample_on_grid, Direction, HardyInput, UniformGrid,
};
use hbar_polar::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;

fn main() -> Result<()> {
    let hbar = 1.0;
    let grid = UniformGrid::spanning(-20.0, 20.0, 1024)?;
    let psi = sample_on_grid(&grid, |x| Complex64::new((-x * x / 4.0).exp(), 0.0));

    let (pgrid, psi_hat) = hbar_fourier_1d(&psi, &grid, hbar, Direction::Forward)?;
    let peak = psi_hat.iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("dual grid step {:.6}, |psi_hat| peak {:.6} (exact sqrt 2 = {:.6})", pgrid.step, peak, 2f64.sqrt());

    let (_, back) = hbar_fourier_1d(&psi_hat, &pgrid, hbar, Direction::Inverse)?;
    let err = back.iter().zip(&psi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("round-trip error {err:.2e}");

    for (sx, sp) in [(1.0, 0.5), (1.0, 0.4), (2.0, 0.25)] {
        let c = hardy_envelope_verify(&psi, &grid, sx, sp, hbar)?;
        println!("envelope ({sx}, {sp}): holds = {}, constant = {:.4e}", c.holds, c.constant);
    }

    for (a, b) in [(0.5, 0.5), (1.0, 0.5), (0.3, 0.5)] {
        let input = HardyInput::new(DMatrix::from_element(1, 1, a), DMatrix::from_element(1, 1, b), 1.0)?;
        let v = hardy_check(&input, hbar)?;
        println!("A = {a}, B = {b}: {:?}", v.classification);
    }
    Ok(())
}
