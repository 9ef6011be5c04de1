//! Exact computations with binary forms: transvectants, covariants, graded
//! pieces of the ideals generated by the quadratic covariants, Gordan's cubic
//! syzygies and the splitting type of the Hessian cohomology bundle.

pub mod classical;
pub mod error;
pub mod gordan;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod probes;
pub mod rational;
pub mod repdim;
pub mod saturation;
pub mod splitting;
pub mod transvectant;

pub use error::{Error, Result};
pub use poly::{Bidegree, Monomial, SparsePoly, VariableUniverse};
pub use rational::ExactRational;
pub use transvectant::{Covariant, transvect};
