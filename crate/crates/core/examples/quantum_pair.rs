//! Quantum-pair verdicts for intervals and boxes, with the inclusion scale
//! `lambda_max` and the margin to the boundary `X^ħ = P`.
//!
//! Run with `cargo run --example quantum_pair`.

use hbar_polar::body::{ConvexBody, Ellipsoid, HPolytope};
use hbar_polar::polar::{is_quantum_pair_default, polar_dual};
use hbar_polar::Result;

fn main() -> Result<()> {
    let hbar = 1.0;
    println!("{:>6} {:>6} {:>8} {:>10} {:>10}", "a", "b", "pair", "lambda", "capacity");
    for (a, b) in [(2.0, 0.25), (2.0, 0.5), (2.0, 1.0), (0.1, 1.0)] {
        let x: ConvexBody = HPolytope::interval(a)?.into();
        let p: ConvexBody = HPolytope::interval(b)?.into();
        let v = is_quantum_pair_default(&x, &p, hbar)?;
        println!("{a:>6} {b:>6} {:>8} {:>10.6} {:>10.6}", v.is_pair, v.lambda_max, v.capacity);
    }

    // A body and its own dual sit exactly on the boundary.
    let x: ConvexBody = Ellipsoid::ball(3, 0.7)?.into();
    let v = is_quantum_pair_default(&x, &polar_dual(&x, hbar)?, hbar)?;
    println!("\n(X, X^hbar): pair = {}, margin = {:.2e}", v.is_pair, v.margin);

    // Mixed representations go through exact vertex enumeration.
    let cube: ConvexBody = HPolytope::from_box(&[1.0, 1.0, 1.0])?.into();
    let ball: ConvexBody = Ellipsoid::ball(3, 3f64.sqrt())?.into();
    let v = is_quantum_pair_default(&cube, &ball, hbar)?;
    println!("(cube, ball of radius sqrt 3): pair = {}, exact = {}", v.is_pair, v.exact);
    Ok(())
}
