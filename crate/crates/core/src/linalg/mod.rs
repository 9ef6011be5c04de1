//! Exact and modular linear algebra used by the rank and determinant code.

pub mod exact;
pub mod modular;
