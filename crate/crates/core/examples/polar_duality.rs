//! ħ-polar duals of the three body representations, and the basic laws
//! they obey.
//!
//! Run with `cargo run --example polar_duality`.

use hbar_polar::body::{ConvexBody, Ellipsoid, HPolytope, VPolytope};
use hbar_polar::containment::contains;
use hbar_polar::io::body_to_json;
use hbar_polar::polar::polar_dual;
use hbar_polar::Result;
use nalgebra::DMatrix;

fn main() -> Result<()> {
    let hbar = 1.0;

    let ball: ConvexBody = Ellipsoid::ball(2, 2.0)?.into();
    let dual = polar_dual(&ball, hbar)?;
    println!("B(2)^hbar is a ball of radius {}", dual.axis_extent(0)?);

    let square: ConvexBody = HPolytope::from_box(&[1.0, 0.5])?.into();
    println!("dual of the box [-1,1]x[-0.5,0.5]:\n{}", body_to_json(&polar_dual(&square, hbar)?)?);

    let diamond: ConvexBody = VPolytope::cross(&[1.0, 2.0])?.into();
    println!("dual of the cross-polytope:\n{}", body_to_json(&polar_dual(&diamond, hbar)?)?);

    // Involution: (X^ħ)^ħ = X.
    let twice = polar_dual(&polar_dual(&square, hbar)?, hbar)?;
    println!("involution holds: {}", twice.approx_eq(&square, 1e-12));

    // Inclusion reversal: the box sits inside the ball of radius 2, so the
    // small dual ball sits inside the dual of the box.
    let outer = contains(&ball, &square, 1e-9)?;
    let reversed = contains(&polar_dual(&square, hbar)?, &dual, 1e-9)?;
    println!("X inside Y: {}, Y^hbar inside X^hbar: {}", outer.contained, reversed.contained);

    // Equivariance under linear maps: (L X)^ħ = L^{-T} X^ħ.
    let l = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 1.0]);
    let lhs = polar_dual(&square.linear_image(&l)?, hbar)?;
    let rhs = polar_dual(&square, hbar)?.linear_image(&l.clone().try_inverse().unwrap().transpose())?;
    println!("equivariance holds: {}", lhs.approx_eq(&rhs, 1e-9));
    Ok(())
}
