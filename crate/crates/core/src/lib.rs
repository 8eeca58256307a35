//! Harmonic extension to the right half plane through the Poisson integral,
//! principal-value quadrature for integrands with infinite lattices of simple
//! poles on the integration line, and a catalog of closed-form integral
//! identities verified against direct numerical quadrature.
//!
//! The numerical core (`kernel`, `quadrature`, `lattice`, `residue`, `series`)
//! is generic over the scalar type through [`Real`]; the catalog and the
//! verification harness work in `f64`. Concrete `f64` aliases are exported
//! at the crate root.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod catalog;
pub mod error;
pub mod kernel;
pub mod lattice;
pub mod quadrature;
pub mod report;
pub mod residue;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub use kernel::{harmonic_extension, kernel_tail_mass, poisson_kernel};
pub use quadrature::{
    integrate_adaptive, integrate_oscillatory_tail, integrate_pv_cell, integrate_pv_line,
    QuadStatus,
};
pub use residue::numeric_residue;
pub use series::{imag_identity_rhs, pole_series, sech_series};

/// `f64` evaluation point in the right half plane.
pub type Point = kernel::HalfPlanePoint<f64>;
/// `f64` boundary data.
pub type Boundary = kernel::BoundaryFunction<f64>;
/// `f64` pole lattice.
pub type Lattice = lattice::PoleLattice<f64>;
/// `f64` quadrature configuration.
pub type QuadConfig = quadrature::QuadConfig<f64>;
/// `f64` quadrature result.
pub type QuadResult = quadrature::QuadResult<f64>;
/// `f64` series result.
pub type SeriesResult = series::SeriesResult<f64>;
/// `f64` complex numbers, as used by the catalog's half-plane functions.
pub type Complex = num_complex::Complex<f64>;
