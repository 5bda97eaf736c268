use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{QksError, Result};
use crate::ncalgebra::{
    apply_automorphism, check_action_well_defined, AlgebraSpec, GroupElement, GroupSpec, Monomial, NCPoly,
};
use crate::scalar::CyclotomicNumber;

/// The skew group ring `A#G`.
#[derive(Debug, PartialEq, Eq)]
pub struct SkewRing {
    algebra: Arc<AlgebraSpec>,
    group: GroupSpec,
}

impl SkewRing {
    /// Fails when the group action does not extend to `A`.
    pub fn new(algebra: Arc<AlgebraSpec>, group: GroupSpec) -> Result<Arc<Self>> {
        if !check_action_well_defined(&algebra, &group) {
            return Err(QksError::ActionUndefined(format!("{group} on {algebra}")));
        }
        Ok(Arc::new(SkewRing { algebra, group }))
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }
}

impl fmt::Display for SkewRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.algebra, self.group)
    }
}

/// An element `Σ a_f f` of `A#G`.
#[derive(Clone, Debug)]
pub struct SkewElement {
    ring: Arc<SkewRing>,
    coeffs: BTreeMap<GroupElement, NCPoly>,
}

fn same_ring(a: &Arc<SkewRing>, b: &Arc<SkewRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SkewElement {
    pub fn zero(ring: &Arc<SkewRing>) -> Self {
        SkewElement {
            ring: Arc::clone(ring),
            coeffs: BTreeMap::new(),
        }
    }

    /// `a·f`.
    pub fn from_poly(ring: &Arc<SkewRing>, a: NCPoly, f: GroupElement) -> Result<Self> {
        if !Arc::ptr_eq(a.algebra(), ring.algebra()) && **a.algebra() != **ring.algebra() {
            return Err(QksError::AlgebraMismatch);
        }
        if !ring.group().contains(f) {
            return Err(QksError::InvalidGroup(format!("{f} is not in {}", ring.group())));
        }
        let mut x = Self::zero(ring);
        if !a.is_zero() {
            x.coeffs.insert(f, a);
        }
        Ok(x)
    }

    pub fn one(ring: &Arc<SkewRing>) -> Self {
        Self::group_element(ring, GroupElement::IDENTITY)
    }

    pub fn scalar(ring: &Arc<SkewRing>, c: CyclotomicNumber) -> Self {
        Self::from_poly(ring, NCPoly::scalar(ring.algebra(), c), GroupElement::IDENTITY).expect("identity")
    }

    /// `1·f`.
    pub fn group_element(ring: &Arc<SkewRing>, f: GroupElement) -> Self {
        Self::from_poly(ring, NCPoly::one(ring.algebra()), f).expect("element of the group")
    }

    /// `c·u^a v^b·f`.
    pub fn monomial(ring: &Arc<SkewRing>, a: i32, b: i32, f: GroupElement, c: CyclotomicNumber) -> Result<Self> {
        Self::from_poly(ring, NCPoly::monomial(ring.algebra(), a, b, c)?, f)
    }

    pub fn u(ring: &Arc<SkewRing>) -> Self {
        Self::from_poly(ring, NCPoly::u(ring.algebra()), GroupElement::IDENTITY).expect("u")
    }

    pub fn v(ring: &Arc<SkewRing>) -> Self {
        Self::from_poly(ring, NCPoly::v(ring.algebra()), GroupElement::IDENTITY).expect("v")
    }

    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    /// Nonzero components keyed by group element.
    pub fn coeffs(&self) -> &BTreeMap<GroupElement, NCPoly> {
        &self.coeffs
    }

    pub fn component(&self, f: GroupElement) -> NCPoly {
        self.coeffs
            .get(&f)
            .cloned()
            .unwrap_or_else(|| NCPoly::zero(self.ring.algebra()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(QksError::RingMismatch)
        }
    }

    fn insert_add(&mut self, f: GroupElement, a: NCPoly) -> Result<()> {
        let sum = match self.coeffs.remove(&f) {
            Some(old) => old.add(&a)?,
            None => a,
        };
        if !sum.is_zero() {
            self.coeffs.insert(f, sum);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (f, a) in &other.coeffs {
            out.insert_add(*f, a.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&CyclotomicNumber::from_integer(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut out = Self::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (f, a) in &self.coeffs {
            out.coeffs.insert(*f, a.scale(c));
        }
        out
    }

    /// `(r f)(s h) = r (f·s) fh`, extended bilinearly.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let group = self.ring.group();
        let mut out = Self::zero(&self.ring);
        for (f, r) in &self.coeffs {
            for (h, s) in &other.coeffs {
                let fs = apply_automorphism(group, *f, s)?;
                out.insert_add(group.multiply(*f, *h), r.mul(&fs)?)?;
            }
        }
        Ok(out)
    }

    /// Inverse of a unit `c·u^a v^b·f`.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs.len() != 1 {
            return Err(QksError::NotInvertible(self.to_string()));
        }
        let (f, a) = self.coeffs.iter().next().expect("one component");
        let group = self.ring.group();
        let finv = group.inverse(*f);
        // (a f)^{-1} = f^{-1} a^{-1} = (f^{-1}·a^{-1}) f^{-1}
        let ainv = apply_automorphism(group, finv, &a.inverse()?)?;
        Self::from_poly(&self.ring, ainv, finv)
    }

    /// Integer power; negative powers need a unit.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.ring);
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Commutes with `u·e`, `v·e` and every group generator.
    pub fn is_central(&self) -> bool {
        let ring = &self.ring;
        let mut tests = vec![Self::u(ring), Self::v(ring)];
        for f in ring.group().generators() {
            tests.push(Self::group_element(ring, f));
        }
        tests
            .iter()
            .all(|t| self.commutator(t).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Every `(group element, monomial, coefficient)` of the numerators.
    pub fn terms(&self) -> impl Iterator<Item = (GroupElement, Monomial, &CyclotomicNumber)> + '_ {
        self.coeffs
            .iter()
            .flat_map(|(f, a)| a.terms().iter().map(move |(m, c)| (*f, *m, c)))
    }

    pub fn has_denominator(&self) -> bool {
        self.coeffs.values().any(NCPoly::has_denominator)
    }

    /// Sorted degrees of the nonzero homogeneous components.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.coeffs.values().flat_map(|a| a.degrees()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

impl PartialEq for SkewElement {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .all(|(f, a)| other.coeffs.get(f).is_some_and(|b| a == b))
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, a)| {
                if g.is_identity() {
                    format!("({a})")
                } else {
                    format!("({a})*{g}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Product in `A#G`; errors on mismatched rings.
pub fn skew_multiply(x: &SkewElement, y: &SkewElement) -> Result<SkewElement> {
    x.mul(y)
}

/// Whether `x` commutes with the generators of `A#G`.
pub fn is_central(x: &SkewElement) -> bool {
    x.is_central()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_on_generators() {
        let n = 3;
        let q = CyclotomicNumber::zeta(5);
        let ring = SkewRing::new(AlgebraSpec::quantum(q).unwrap(), GroupSpec::cyclic(n)).unwrap();
        let g = GroupElement::new(1, 0);
        let ug = SkewElement::monomial(&ring, 1, 0, g, CyclotomicNumber::one()).unwrap();
        let v = SkewElement::v(&ring);
        let expected = SkewElement::monomial(&ring, 1, 1, g, CyclotomicNumber::zeta(3).inv().unwrap()).unwrap();
        assert_eq!(ug.mul(&v).unwrap(), expected);
    }

    #[test]
    fn reflections() {
        let a = AlgebraSpec::quantum(CyclotomicNumber::from_integer(-1)).unwrap();
        let ring = SkewRing::new(a, GroupSpec::sym2()).unwrap();
        let h = GroupElement::new(0, 1);
        let hh = SkewElement::group_element(&ring, h);
        assert_eq!(hh.mul(&hh).unwrap(), SkewElement::one(&ring));
        let vh = SkewElement::monomial(&ring, 0, 1, h, CyclotomicNumber::one()).unwrap();
        let uh = SkewElement::monomial(&ring, 1, 0, h, CyclotomicNumber::one()).unwrap();
        let vv = SkewElement::monomial(&ring, 0, 2, GroupElement::IDENTITY, CyclotomicNumber::one()).unwrap();
        assert_eq!(vh.mul(&uh).unwrap(), vv);
    }

    #[test]
    fn centrality_examples() {
        let ring = SkewRing::new(AlgebraSpec::commutative(), GroupSpec::sym2()).unwrap();
        let uv = SkewElement::u(&ring).mul(&SkewElement::v(&ring)).unwrap();
        assert!(uv.is_central());
        let c3 = SkewRing::new(AlgebraSpec::quantum(CyclotomicNumber::zeta(3)).unwrap(), GroupSpec::cyclic(3)).unwrap();
        assert!(!SkewElement::u(&c3).is_central());
    }

    #[test]
    fn unit_inverse() {
        let a = AlgebraSpec::quantum(CyclotomicNumber::from_integer(-1))
            .unwrap()
            .localized(true, true)
            .unwrap();
        let ring = SkewRing::new(a, GroupSpec::dihedral(3)).unwrap();
        let x = SkewElement::monomial(&ring, 2, -1, GroupElement::new(2, 1), CyclotomicNumber::from_integer(3)).unwrap();
        assert_eq!(x.mul(&x.inverse().unwrap()).unwrap(), SkewElement::one(&ring));
        assert_eq!(x.inverse().unwrap().mul(&x).unwrap(), SkewElement::one(&ring));
    }
}
