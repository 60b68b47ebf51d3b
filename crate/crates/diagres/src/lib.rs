//! Resolutions of `Q = k[x,y,z]/(x^n+y^n+z^n, x^N, y^N, z^N)` over the diagonal
//! hypersurface ring `R = k[x,y,z]/(x^n+y^n+z^n)`.
//!
//! The crate classifies when `pd_R Q` is finite, builds the explicit
//! resolutions in both cases, and checks everything against a brute-force
//! graded linear-algebra oracle.

pub mod classifier;
pub mod error;
pub mod finitepd;
pub mod frobenius;
pub mod numeric;
pub mod oracle;
pub mod par;
pub mod pfaffian;
pub mod polyring;
pub mod resolver;
pub mod suites;

pub use error::{Error, Result};
