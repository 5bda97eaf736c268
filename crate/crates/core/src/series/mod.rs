//! Hilbert series as exact rational functions, Molien's formula and
//! brute-force invariant counts.

mod molien;
mod polynomial;
mod rational;

pub use molien::{
    cyclic_closed_form, det_one_minus_t, dihedral_closed_form, identity_matrix, invariant_counts, matrix_mul,
    molien_series, trivial_closed_form, Matrix,
};
pub use polynomial::PolynomialT;
pub use rational::{as_counts, compare_with_counts, series_expand, RationalFunctionSeries};
