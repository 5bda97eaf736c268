//! Arithmetic in skew group rings `A#G`, windowed computation of centers and
//! invariants, presented centers, and stabilizers of points of `Z(A)`.

mod center;
mod element;
mod presentation;

pub use center::{
    center_basis, center_by_degree, fixed_subspace, invariant_basis, invariant_center_by_degree,
    invariants_by_degree, same_graded_span, same_span, span_dim, Indexer, Window,
};
pub(crate) use presentation::spans_agree;
pub use element::{is_central, skew_multiply, SkewElement, SkewRing};
pub use presentation::{
    generator_permutation, generator_span_by_degree, stabilizer_of_point, verify_generating_set,
    CentralGenerator, CentralPoint, CentralPresentation, GenPoly,
};
