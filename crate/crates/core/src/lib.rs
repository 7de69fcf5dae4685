//! Bifurcation sets of polynomial functions restricted to affine varieties,
//! computed through Newton polyhedra and Gröbner bases.

pub mod atypical;
pub mod cli;
pub mod config;
pub mod error;
pub mod family;
pub mod ideal;
pub mod instance;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod report;
pub mod scalar;
pub mod univariate;

pub use config::Config;
pub use error::{Error, Result};
pub use parse::parse_polynomial;
pub use poly::{ExponentVector, Polynomial, Ring};
pub use scalar::Scalar;
