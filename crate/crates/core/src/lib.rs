//! Exact tropical intersection theory over the rationals.
//!
//! Polyhedra carry both descriptions and are compared in canonical form.
//! Cycles are weighted pure complexes. On top of these sit divisors of
//! tropical rational functions, stable intersection in `R^n`, Bergman
//! fans of matroids and the moduli fans `M0,n`.

pub mod arith;
pub mod cycles;
pub mod error;
pub mod functions;
pub mod intersection;
pub mod matroids;
pub mod moduli;
mod par;
pub mod polyhedra;

pub use error::{Error, Result};
