//! Exact arithmetic over rationals and cyclotomic fields Q(ζ_N).
//!
//! Every scalar downstream is a [`CyclotomicNumber`]. Mixed conductors are
//! coerced to their lcm before arithmetic; results stay reduced modulo Φ_N.

mod cyclotomic;
mod parse;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use parse::{parse_cyclotomic, parse_rational};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
