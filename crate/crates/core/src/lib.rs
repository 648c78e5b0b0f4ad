//! ħ-polar duality of centrally symmetric convex bodies, quantum covariance
//! matrices, and symplectic capacities.
//!
//! The crate is organized bottom-up:
//!
//! * [`symplectic`]: the standard form, Williamson eigenvalues and the
//!   block-diagonal factorization `L^T A L = L^{-1} B L^{-T} = Λ`.
//! * [`body`], [`containment`], [`fit`]: ellipsoids and symmetric polytopes,
//!   support functions, gauges, containment and enclosing-body fits.
//! * [`polar`]: the ħ-polar dual `X^ħ` and the quantum-pair relation
//!   `X^ħ ⊆ P`.
//! * [`capacity`]: capacities of phase-space ellipsoids and of Lagrangian
//!   products `X × P`.
//! * [`covariance`]: quantum covariance matrices, Robertson–Schrödinger
//!   inequalities and the projections of the covariance ellipsoid.
//! * [`hardy`]: Hardy's uncertainty principle and a discrete ħ-Fourier
//!   transform.
//! * [`cloud`], [`plot`], [`io`]: measurement clouds, section plots and file
//!   formats used by the `hbar-polar` binary.
//!
//! ```
//! use hbar_polar::body::{ConvexBody, HPolytope};
//! use hbar_polar::{capacity, polar};
//!
//! let x: ConvexBody = HPolytope::interval(2.0).unwrap().into();
//! let p = polar::polar_dual(&x, 1.0).unwrap();
//! assert!((p.axis_extent(0).unwrap() - 0.5).abs() < 1e-15);
//! let c = capacity::product_capacity(&x, &p, 1.0).unwrap();
//! assert!((c.value - 4.0).abs() < 1e-12);
//! ```

pub mod body;
pub mod capacity;
pub mod cloud;
pub mod containment;
pub mod covariance;
pub mod error;
pub mod fit;
pub mod hardy;
pub mod io;
pub mod linalg;
pub mod plot;
pub mod polar;
pub mod sample;
pub mod symplectic;

pub use body::{ConvexBody, Ellipsoid, HPolytope, VPolytope};
pub use capacity::{CapacityKind, CapacityReport};
pub use covariance::CovarianceMatrix;
pub use error::{Error, Result};
pub use polar::PairVerdict;
pub use symplectic::SymplecticSpectrum;
