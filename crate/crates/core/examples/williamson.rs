//! Symplectic eigenvalues and the block diagonalization
//! `L^T A L = L^{-1} B L^{-T} = Lambda` of a pair of SPD matrices.
//!
//! Run with `cargo run --example williamson`.

use hbar_polar::sample::{random_spd, random_symplectic};
use hbar_polar::symplectic::{block_diagonalize, block_symplectic, is_symplectic, symplectic_eigenvalues};
use hbar_polar::Result;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, 1.0, 2.0]));
    let s = random_symplectic(2, &mut rng);
    let m = &s * d * s.transpose();
    println!("symplectic spectrum of S diag(1,2,1,2) S^T: {:?}", symplectic_eigenvalues(&m)?.values());

    let a = random_spd(3, &mut rng, 1.0);
    let b = random_spd(3, &mut rng, 1.0);
    let w = block_diagonalize(&a, &b)?;
    println!("eig(AB)       = {:?}", w.product_eigenvalues);
    println!("diag(Lambda)  = {:?}", w.lambda.diagonal().as_slice());
    println!("residual      = {:.2e}", w.residual);

    // diag(L^T, L^{-1}) is symplectic and maps diag(A, B) to diag(Lambda, Lambda).
    let ml = block_symplectic(&w.l)?;
    println!("M_L symplectic: {}", is_symplectic(&ml, 1e-9)?);
    Ok(())
}
