use std::fmt;
use std::sync::Arc;

use super::algebra::{add_term, format_terms, AlgebraSpec, Monomial, Terms};
use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

/// An element of a base algebra in normal form, with a formal denominator
/// drawn from the algebra's adjoined central elements.
#[derive(Clone, Debug)]
pub struct NCPoly {
    algebra: Arc<AlgebraSpec>,
    terms: Terms,
    denominator: Vec<u32>,
}

fn same_algebra(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl NCPoly {
    pub fn zero(algebra: &Arc<AlgebraSpec>) -> Self {
        NCPoly {
            algebra: Arc::clone(algebra),
            terms: Terms::new(),
            denominator: vec![0; algebra.denominators().len()],
        }
    }

    pub fn scalar(algebra: &Arc<AlgebraSpec>, c: CyclotomicNumber) -> Self {
        let mut p = Self::zero(algebra);
        add_term(&mut p.terms, Monomial::ONE, &c);
        p
    }

    pub fn one(algebra: &Arc<AlgebraSpec>) -> Self {
        Self::scalar(algebra, CyclotomicNumber::one())
    }

    /// `c·u^a v^b`; negative exponents require the generator to be inverted.
    pub fn monomial(algebra: &Arc<AlgebraSpec>, a: i32, b: i32, c: CyclotomicNumber) -> Result<Self> {
        let m = Monomial::new(a, b);
        algebra.check_monomial(m)?;
        let mut p = Self::zero(algebra);
        add_term(&mut p.terms, m, &c);
        Ok(p)
    }

    pub fn u(algebra: &Arc<AlgebraSpec>) -> Self {
        Self::monomial(algebra, 1, 0, CyclotomicNumber::one()).expect("u exists")
    }

    pub fn v(algebra: &Arc<AlgebraSpec>) -> Self {
        Self::monomial(algebra, 0, 1, CyclotomicNumber::one()).expect("v exists")
    }

    /// Builds an element from terms, validating inversion constraints.
    pub fn from_terms(algebra: &Arc<AlgebraSpec>, terms: Terms) -> Result<Self> {
        for m in terms.keys() {
            algebra.check_monomial(*m)?;
        }
        let mut p = Self::zero(algebra);
        for (m, c) in terms {
            add_term(&mut p.terms, m, &c);
        }
        Ok(p)
    }

    pub(crate) fn from_parts(algebra: &Arc<AlgebraSpec>, terms: Terms, denominator: Vec<u32>) -> Self {
        NCPoly {
            algebra: Arc::clone(algebra),
            terms,
            denominator,
        }
    }

    /// `1 / D_index`.
    pub fn inverse_of_denominator(algebra: &Arc<AlgebraSpec>, index: usize) -> Result<Self> {
        if index >= algebra.denominators().len() {
            return Err(QksError::InvalidAlgebra(format!("no denominator #{index}")));
        }
        let mut p = Self::one(algebra);
        p.denominator[index] = 1;
        Ok(p)
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    /// Numerator terms.
    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Multiplicities of the adjoined denominators.
    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn has_denominator(&self) -> bool {
        self.denominator.iter().any(|e| *e > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(QksError::AlgebraMismatch)
        }
    }

    /// Numerator rewritten over the denominator `target ≥ self.denominator`.
    fn numerator_over(&self, target: &[u32]) -> Terms {
        let extra: Vec<u32> = target
            .iter()
            .zip(&self.denominator)
            .map(|(t, s)| t - s)
            .collect();
        if extra.iter().all(|e| *e == 0) {
            return self.terms.clone();
        }
        let factor = self.algebra.denominator_power(&extra);
        self.algebra.mul_terms(&self.terms, &factor)
    }

    fn common_denominator(&self, other: &Self) -> Vec<u32> {
        self.denominator
            .iter()
            .zip(&other.denominator)
            .map(|(a, b)| *a.max(b))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.denominator == other.denominator {
            let mut terms = self.terms.clone();
            for (m, c) in &other.terms {
                add_term(&mut terms, *m, c);
            }
            return Ok(Self::from_parts(&self.algebra, terms, self.denominator.clone()));
        }
        let den = self.common_denominator(other);
        let mut terms = self.numerator_over(&den);
        for (m, c) in other.numerator_over(&den) {
            add_term(&mut terms, m, &c);
        }
        Ok(Self::from_parts(&self.algebra, terms, den))
    }

    pub fn neg(&self) -> Self {
        self.scale(&CyclotomicNumber::from_integer(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let terms = if c.is_zero() {
            Terms::new()
        } else {
            self.terms.iter().map(|(m, x)| (*m, x * c)).collect()
        };
        Self::from_parts(&self.algebra, terms, self.denominator.clone())
    }

    /// Normal-form product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let terms = self.algebra.mul_terms(&self.terms, &other.terms);
        let den = self
            .denominator
            .iter()
            .zip(&other.denominator)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_parts(&self.algebra, terms, den))
    }

    /// Whether the element is `c·u^a v^b` with `c ≠ 0` and both powers units.
    pub fn as_unit_monomial(&self) -> Option<(Monomial, CyclotomicNumber)> {
        if self.terms.len() != 1 || self.has_denominator() {
            return None;
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        if self.algebra.is_unit_monomial(*m) {
            Some((*m, c.clone()))
        } else {
            None
        }
    }

    /// Inverse of a unit monomial.
    pub fn inverse(&self) -> Result<Self> {
        let (m, c) = self
            .as_unit_monomial()
            .ok_or_else(|| QksError::NotInvertible(self.to_string()))?;
        // (c u^a v^b)^{-1} = c^{-1} v^{-b} u^{-a}
        let terms = self
            .algebra
            .mul_monomials(Monomial::new(0, -m.b), Monomial::new(-m.a, 0));
        let p = Self::from_parts(&self.algebra, terms, self.denominator.clone());
        Ok(p.scale(&c.inv()?))
    }

    /// Integer power; negative powers need a unit monomial.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.algebra);
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

    /// Terms of total degree `d`, where the denominator counts negatively.
    pub fn graded_component(&self, d: i32) -> Self {
        let shift = self.algebra.denominator_degree(&self.denominator);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() - shift == d)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Self::from_parts(&self.algebra, terms, self.denominator.clone())
    }

    /// Sorted list of degrees with nonzero components.
    pub fn degrees(&self) -> Vec<i32> {
        let shift = self.algebra.denominator_degree(&self.denominator);
        let mut ds: Vec<i32> = self.terms.keys().map(|m| m.degree() - shift).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        if !same_algebra(&self.algebra, &other.algebra) {
            return false;
        }
        if self.denominator == other.denominator {
            return self.terms == other.terms;
        }
        let den = self.common_denominator(other);
        self.numerator_over(&den) == other.numerator_over(&den)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_terms(&self.terms);
        if !self.has_denominator() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self
            .algebra
            .denominators()
            .iter()
            .zip(&self.denominator)
            .filter(|(_, e)| **e > 0)
            .map(|(d, e)| {
                if *e == 1 {
                    format!("({})", format_terms(d))
                } else {
                    format!("({})^{e}", format_terms(d))
                }
            })
            .collect();
        write!(f, "({num})/{}", den.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalgebra::AlgebraKind;

    #[test]
    fn graded_components() {
        let a = AlgebraSpec::commutative();
        let u = NCPoly::u(&a);
        let v = NCPoly::v(&a);
        let x = u.mul(&v).unwrap().add(&u.pow(3).unwrap()).unwrap();
        assert_eq!(x.graded_component(2), u.mul(&v).unwrap());
        assert!(x.graded_component(1).is_zero());
    }

    #[test]
    fn unit_inverse_in_quantum_torus() {
        let q = CyclotomicNumber::from_integer(2);
        let a = AlgebraSpec::new(AlgebraKind::QuantumPlane(q), true, true).unwrap();
        let x = NCPoly::monomial(&a, 2, -3, CyclotomicNumber::from_integer(5)).unwrap();
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y).unwrap(), NCPoly::one(&a));
        assert_eq!(y.mul(&x).unwrap(), NCPoly::one(&a));
    }

    #[test]
    fn formal_denominators_cancel() {
        let base = AlgebraSpec::commutative();
        let mut d = Terms::new();
        d.insert(Monomial::new(1, 0), CyclotomicNumber::one());
        d.insert(Monomial::new(0, 1), CyclotomicNumber::from_integer(-1));
        let a = base.with_denominators(vec![d]).unwrap();
        let diff = NCPoly::u(&a).sub(&NCPoly::v(&a)).unwrap();
        let inv = NCPoly::inverse_of_denominator(&a, 0).unwrap();
        assert_eq!(diff.mul(&inv).unwrap(), NCPoly::one(&a));
        assert_eq!(inv.graded_component(-1), inv);
    }

    #[test]
    fn mismatched_algebras() {
        let a = AlgebraSpec::commutative();
        let b = AlgebraSpec::jordan();
        assert_eq!(NCPoly::u(&a).mul(&NCPoly::u(&b)), Err(QksError::AlgebraMismatch));
    }
}
