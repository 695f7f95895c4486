//! Wave-length behaviour of smooth periodic traveling waves of the
//! Camassa–Holm equation with linear dispersion.

pub mod certificates;
pub mod error;
pub mod model;
pub mod ode;
pub mod period;
pub mod planar;
pub mod profile;
pub mod quadrature;

pub use chwave_algebra::Execution;
pub use error::{Error, Result};
