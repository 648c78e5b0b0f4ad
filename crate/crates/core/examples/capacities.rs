//! Symplectic capacities of phase-space ellipsoids and of Lagrangian
//! products `X × P`, including the `4ħ` value on `X × X^ħ`.
//!
//! Run with `cargo run --example capacities`.

use hbar_polar::body::{ConvexBody, Ellipsoid, HPolytope};
use hbar_polar::capacity::{ellipsoid_capacity, product_capacity};
use hbar_polar::polar::polar_dual;
use hbar_polar::sample::random_symplectic;
use hbar_polar::Result;
use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let hbar = 1.0;

    let ball = Ellipsoid::ball(4, 1.5)?;
    println!("c(B^4(1.5)) = {:.9}  (pi R^2 = {:.9})", ellipsoid_capacity(&ball)?, std::f64::consts::PI * 2.25);

    // Symplectic invariance: c(S(B)) = c(B) for any linear symplectic S.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = random_symplectic(2, &mut rng);
    let image = ConvexBody::from(ball.clone()).linear_image(&s)?;
    if let ConvexBody::Ellipsoid(e) = image {
        println!("after a random symplectic map: {:.9}", ellipsoid_capacity(&e)?);
    }

    // An ellipsoid that is not a ball: the smallest symplectic radius wins.
    let q = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 0.25, 1.0, 4.0]));
    println!("c(diag(1, 1/4, 1, 4)) = {:.9}", ellipsoid_capacity(&Ellipsoid::new(q)?)?);

    for n in 1..=3 {
        let x: ConvexBody = HPolytope::from_box(&vec![0.8; n])?.into();
        let r = product_capacity(&x, &polar_dual(&x, hbar)?, hbar)?;
        println!("n = {n}: c(X x X^hbar) = {:.12}, equality case {}", r.value, r.equality_case);
    }

    let x: ConvexBody = HPolytope::interval(1.5)?.into();
    let p: ConvexBody = HPolytope::interval(2.0)?.into();
    println!("c([-1.5,1.5] x [-2,2]) = {} (area 4ab = 12)", product_capacity(&x, &p, hbar)?.value);
    Ok(())
}
