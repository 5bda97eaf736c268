//! Normal-form arithmetic in the quantum, Jordan and commutative planes,
//! their localizations, and the finite group actions on them.

mod action;
mod algebra;
mod group;
mod poly;

pub use action::{apply_automorphism, check_action_well_defined, check_inner_by};
pub use algebra::{format_terms, AlgebraKind, AlgebraSpec, Monomial, Terms};
pub use group::{GroupElement, GroupKind, GroupSpec, MonomialAction};
pub use poly::NCPoly;

/// Normal-form product of two elements of the same algebra.
pub fn nc_multiply(x: &NCPoly, y: &NCPoly) -> crate::Result<NCPoly> {
    x.mul(y)
}

/// Normal form of the product of two group elements.
pub fn group_multiply(group: &GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement {
    group.multiply(x, y)
}
