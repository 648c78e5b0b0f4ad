//! Plot data for coordinate-plane sections of bodies, covariance ellipses
//! and Lagrangian products.
//!
//! Run with `cargo run --example section_plot > section.csv`.

use hbar_polar::body::{ConvexBody, HPolytope, VPolytope};
use hbar_polar::covariance::{covariance_ellipsoid, CovarianceMatrix};
use hbar_polar::plot::{section_plot, SectionSource};
use hbar_polar::polar::polar_dual;
use hbar_polar::Result;
use nalgebra::DMatrix;

fn main() -> Result<()> {
    let sigma = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 0.6]))?;
    let ellipse = section_plot(&SectionSource::Body(covariance_ellipsoid(&sigma)?.into()), (0, 1))?;
    print!("{}", ellipse.to_text());

    let octahedron: ConvexBody = VPolytope::cross(&[1.0, 2.0, 1.5])?.into();
    eprintln!("octahedron (x1, x2) section area: {}", section_plot(&SectionSource::Body(octahedron), (0, 1))?.area);

    let x: ConvexBody = HPolytope::from_box(&[1.0, 2.0])?.into();
    let p = polar_dual(&x, 1.0)?;
    for plane in [(0, 1), (0, 2), (2, 3)] {
        let s = section_plot(&SectionSource::Product(x.clone(), p.clone()), plane)?;
        eprintln!("X x X^hbar section {plane:?}: {} points, area {}", s.points.len(), s.area);
    }
    Ok(())
}
