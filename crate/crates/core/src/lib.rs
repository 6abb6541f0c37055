//! Verified enclosures of the eigenvalues inside a real interval, and of
//! their eigenvectors, for generalized Hermitian pencils `A x = λ B x`.
//!
//! The solver discretizes contour-integral complex moments with the
//! trapezoidal rule, bounds the truncation error rigorously and verifies the
//! reduced eigenproblem in interval arithmetic. Both the Rayleigh–Ritz
//! reduction and the block Hankel reduction are provided.

pub mod error;
pub mod interval;
pub mod linalg;
pub mod moments;

pub use error::{Error, Result};
pub mod harness;
pub mod verifier;
