//! Exact adjoint hypersurfaces, residual arrangements and Wachspress
//! coordinates of convex polytopes over the rationals.

pub mod adjoint;
pub mod combinatorics;
pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod invariants3d;
pub mod moments;
pub mod polytope;
pub mod report;
pub mod residual;
pub mod sampling;
pub mod segre;
pub mod wachspress;

pub use error::{Error, Result};
