//! Exact polynomial algebra over ℤ and ℚ.
//!
//! Dense univariate polynomials nest to give multivariate ones, which is all
//! the certificate pipeline needs: resultants by fraction-free elimination,
//! Sturm and Descartes root counting, and multi-modular discriminants for the
//! large cases.

pub mod descartes;
pub mod modular;
pub mod par;
pub mod poly;
pub mod resultant;
pub mod ring;
pub mod sturm;

pub use par::Execution;
pub use poly::Poly;
pub use ring::{rat, OrderedRing, QAlgebra, Ring};
pub use sturm::{Point, QPoly, SturmChain, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("polynomial vanishes at an interval endpoint")]
    EndpointRoot,
    #[error("degree precondition violated: {0}")]
    Degree(&'static str),
    #[error("division was expected to be exact")]
    InexactDivision,
    #[error("root isolation did not terminate within the depth limit")]
    NotIsolated,
    #[error("too many unlucky evaluation points modulo {0}")]
    UnluckyPrime(u64),
}
