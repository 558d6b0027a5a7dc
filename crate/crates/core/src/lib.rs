//! Exact Hermitian spaces over the rationals, Gaussian rationals and rational
//! quaternions, the orthosets of their rays, and the correspondence between
//! semilinear maps and adjointable maps of rays.

pub mod correspondence;
pub mod error;
pub mod hermspace;
mod intquat;
pub mod linalg;
pub mod orthoset;
pub mod par;
pub mod random;
pub mod report;
pub mod starfields;
pub mod suites;

pub use error::{Error, Result};
