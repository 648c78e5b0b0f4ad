//! Validating covariance matrices: the positivity test, Williamson
//! spectrum, ellipsoid capacity, per-mode Robertson-Schrödinger checks and
//! the quantum pair formed by the position and momentum projections.
//!
//! Run with `cargo run --example covariance_validation`.

use hbar_polar::covariance::{covariance_report, random_quantum_covariance, CovarianceMatrix, VALIDITY_TOL};
use hbar_polar::Result;
use nalgebra::DMatrix;

fn show(name: &str, s: &CovarianceMatrix, hbar: f64) -> Result<()> {
    let r = covariance_report(s, hbar, VALIDITY_TOL)?;
    println!("{name}");
    println!("  quantum: {}  williamson: {}  capacity: {:.9} ({})", r.is_quantum, r.williamson_ok, r.capacity, r.capacity_ok);
    println!("  spectrum: {:?}", r.symplectic_spectrum);
    println!("  RS per mode: {:?}", r.rs);
    if let Some(v) = r.pair {
        println!("  projections form a pair: {} (lambda_max {:.6})", v.is_pair, v.lambda_max);
    }
    Ok(())
}

fn main() -> Result<()> {
    let hbar = 1.0;
    show("vacuum (hbar/2) I", &CovarianceMatrix::new(DMatrix::identity(2, 2) * 0.5)?, hbar)?;
    show("squeezed below the bound", &CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[0.2, 0.0, 0.0, 0.5]))?, hbar)?;

    // Strong x-p correlation passes the per-mode Heisenberg test but not RS.
    let correlated = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.9, 0.9, 1.0]))?;
    show("correlated", &correlated, hbar)?;

    show("random two-mode minimal state", &random_quantum_covariance(2, 11, hbar, 0.0)?, hbar)?;
    show("random three-mode thermal state", &random_quantum_covariance(3, 12, hbar, 0.5)?, hbar)?;
    Ok(())
}
