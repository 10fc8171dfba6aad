//! Exact Masur-Veech volumes, Siegel-Veech constants and Lyapunov sums for the
//! principal strata of quadratic differentials, computed by topological recursion.

pub mod analytics;
pub mod error;
pub mod exact;
pub mod series;
pub mod spectral;
pub mod wk;

pub use error::{Error, Result};
pub use exact::{PiScalar, Rational};
