use std::fmt;

use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

use super::polynomial::PolynomialT;

type Cyclo = CyclotomicNumber;

/// `numerator / denominator` with `denominator(0) = 1`, so that the power
/// series expansion exists.
#[derive(Clone, Debug)]
pub struct RationalFunctionSeries {
    numerator: PolynomialT,
    denominator: PolynomialT,
}

impl RationalFunctionSeries {
    pub fn new(numerator: PolynomialT, denominator: PolynomialT) -> Result<Self> {
        let c0 = denominator.coeff(0);
        if c0.is_zero() {
            return Err(QksError::DivisionByZero);
        }
        let inv = c0.inv()?;
        Ok(RationalFunctionSeries {
            numerator: numerator.scale(&inv),
            denominator: denominator.scale(&inv),
        })
    }

    /// `Π num / Π den`.
    pub fn from_factors(num: &[PolynomialT], den: &[PolynomialT]) -> Result<Self> {
        Self::new(PolynomialT::product(num), PolynomialT::product(den))
    }

    pub fn polynomial(p: PolynomialT) -> Self {
        Self::new(p, PolynomialT::one()).expect("unit denominator")
    }

    pub fn numerator(&self) -> &PolynomialT {
        &self.numerator
    }

    pub fn denominator(&self) -> &PolynomialT {
        &self.denominator
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .numerator
            .mul(&other.denominator)
            .add(&other.numerator.mul(&self.denominator));
        Self::new(num, self.denominator.mul(&other.denominator)).expect("unit constant term")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
        .expect("unit constant term")
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        RationalFunctionSeries {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    /// Equality of rational functions by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }

    /// First `d + 1` power series coefficients.
    pub fn expand(&self, d: usize) -> Vec<Cyclo> {
        let den = self.denominator.coeffs();
        let mut out: Vec<Cyclo> = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let mut c = self.numerator.coeff(j);
            for (i, q) in den.iter().enumerate().skip(1).take(j) {
                if !q.is_zero() {
                    c -= &(q * &out[j - i]);
                }
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for RationalFunctionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}

/// First `d + 1` coefficients of `f`.
pub fn series_expand(f: &RationalFunctionSeries, d: usize) -> Vec<Cyclo> {
    f.expand(d)
}

/// Whether the expansion of `f` starts with exactly `counts`.
pub fn compare_with_counts(f: &RationalFunctionSeries, counts: &[u64]) -> bool {
    if counts.is_empty() {
        return true;
    }
    f.expand(counts.len() - 1)
        .iter()
        .zip(counts)
        .all(|(c, n)| *c == Cyclo::from_integer(*n as i64))
}

/// Integer coefficients, when every coefficient is a nonnegative integer.
pub fn as_counts(coeffs: &[Cyclo]) -> Option<Vec<u64>> {
    coeffs
        .iter()
        .map(|c| {
            let r = c.to_rational()?;
            if !r.is_integer() {
                return None;
            }
            u64::try_from(r.to_integer()).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus(e: usize) -> PolynomialT {
        PolynomialT::one_minus(Cyclo::one(), e)
    }

    #[test]
    fn geometric_series() {
        let f = RationalFunctionSeries::from_factors(&[], &[one_minus(1)]).unwrap();
        assert_eq!(as_counts(&series_expand(&f, 3)).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn type_a1_series() {
        let f = RationalFunctionSeries::from_factors(&[one_minus(4)], &[one_minus(2), one_minus(2), one_minus(2)]).unwrap();
        assert!(compare_with_counts(&f, &[1, 0, 3, 0, 5]));
        assert!(!compare_with_counts(&f, &[1, 0, 3, 0, 6]));
    }

    #[test]
    fn cross_multiplication() {
        let a = RationalFunctionSeries::from_factors(&[one_minus(2)], &[one_minus(1)]).unwrap();
        let b = RationalFunctionSeries::polynomial(PolynomialT::from_integers(&[1, 1]));
        assert!(a.equals(&b));
        assert!(!a.equals(&RationalFunctionSeries::polynomial(PolynomialT::one())));
    }

    #[test]
    fn zero_constant_term_is_rejected() {
        assert!(RationalFunctionSeries::new(PolynomialT::one(), PolynomialT::from_integers(&[0, 1])).is_err());
    }
}
