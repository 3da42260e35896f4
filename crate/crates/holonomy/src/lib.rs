//! Holonomy R-matrices for quantum sl2 at a root of unity.
//!
//! Module layout, bottom to top: [`qdilog`] (cyclic quantum dilogarithm and
//! friends), [`characters`] (central characters and their braiding),
//! [`weylrep`] (cyclic modules as matrices), [`rmatrix`] (R-matrices of
//! log-colored crossings), [`braidgrpd`] (braid diagrams and the state sum).
//! [`verify`] bundles the identity suites used by the CLI self-test.

pub mod braidgrpd;
pub mod characters;
mod error;
pub mod linalg;
pub mod qdilog;
pub mod rmatrix;
pub mod sample;
pub mod verify;
pub mod weylrep;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
