//! Exact computations for skew group rings `A#G` where `A` is a rank-two
//! quantum, Jordan or commutative plane and `G` is a small finite group.

pub mod error;
pub mod fiber;
pub mod linalg;
pub mod ncalgebra;
pub mod scalar;
pub mod series;
pub mod skewring;
pub mod workbench;

pub use error::{QksError, Result};
