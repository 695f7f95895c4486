//! Exact certificates for the number of critical periods.

pub mod algfrac;
pub mod pipeline;
pub mod identities;
pub mod zeros;
pub mod certify;
