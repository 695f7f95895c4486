use chwave_algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate parameters: c = -kappa collapses the bifurcation window")]
    DegenerateParameters,
    #[error("no center: requires -2 beta^2 < 3 alpha < 0")]
    NoCenter,
    #[error("energy {h} outside the period annulus (0, {h_top})")]
    OutOfAnnulus { h: f64, h_top: f64 },
    #[error("wave height {a} outside (0, {a_max})")]
    OutOfRange { a: f64, a_max: f64 },
    #[error("no smooth periodic traveling wave for these parameters")]
    NoSmoothPeriodicTws,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("trajectory approached the singular line w = 0")]
    SingularLine,
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("too few samples: {0}")]
    TooFewSamples(usize),
    #[error("exact identity failed: {0}")]
    IdentityMismatch(String),
    #[error("certificate inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, Error>;
