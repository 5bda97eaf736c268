//! Finite-dimensional fiber algebras `T/𝔪T` and their central-simple
//! certificates.

mod algebra;
mod build;
mod quotient_ring;

pub use algebra::{Certificate, FiniteDimAlgebra, Witness};
pub use build::{build_fiber, FiberBuilder, FiberRecipe};
