//! Exact construction and verification of a family of pseudo-Anosov
//! transition matrices, with the spectral, combinatorial and closed-form
//! bounds that control the Lipschitz constant of the systole map.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod charpoly;
pub mod conventions;
pub mod curves;
pub mod digraph;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod spectral;
pub mod twist;
pub mod verify;

pub use curves::{CurveId, CurveSystem, Family, RotationDirection};
pub use digraph::{Digraph, Orientation};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use spectral::RootEnclosure;
pub use twist::WeightVector;
