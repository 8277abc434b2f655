//! Exact Bose-Mesner algebra of the Johnson scheme `J(n, k)`, Wilson's
//! Erdős–Ko–Rado matrix, and projections of Steiner systems onto the algebra.
//!
//! Every certificate-bearing computation is exact. Floating point appears
//! only in [`oracles`], which corroborates but never feeds a verdict.

pub mod designs;
pub mod error;
pub mod exact;
pub mod exec;
pub mod identity;
pub mod johnson;
pub mod oracles;
pub mod projection;
pub mod subsets;
pub mod wilson;

pub use error::{Error, Result};
pub use exact::{Polynomial, Rational, RationalFunction, Scalar};
pub use exec::Execution;
pub use johnson::{BMVector, EigenSystem, SchemeParams};
pub use subsets::{Family, KSubset};
