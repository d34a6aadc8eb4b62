//! Exact computation of the zeroth Poisson homology of weighted-homogeneous
//! surface singularities `X = {Q = 0} ⊂ ℂ³` and of their symmetric powers,
//! together with the generating functions that predict it.

pub mod algebra;
pub mod error;
pub mod hp0;
pub mod jacobi;
pub mod poisson;
pub mod series;
pub mod surface;
pub mod sympow;
pub mod verify;

pub use error::{Error, Result};
