//! Boundary integral operators of two-dimensional time-harmonic elasticity
//! with a generalized traction, their Calderón compositions on closed curves
//! and open arcs, spectra and scattering solvers.

pub mod closed_ops;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod material;
pub mod open_ops;
pub mod operator;
pub mod scatter_solver;
pub mod special_fn;
pub mod spectra;

pub use error::{Error, Result};
pub use material::{Constants, Material};
