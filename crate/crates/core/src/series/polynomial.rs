use std::fmt;

use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

type Cyclo = CyclotomicNumber;

/// A polynomial in `t`, constant term first, trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolynomialT {
    coeffs: Vec<Cyclo>,
}

impl PolynomialT {
    pub fn new(mut coeffs: Vec<Cyclo>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialT { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|c| Cyclo::from_integer(*c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    /// `c·t^e`.
    pub fn monomial(c: Cyclo, e: usize) -> Self {
        let mut v = vec![Cyclo::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    /// `1 − c·t^e`.
    pub fn one_minus(c: Cyclo, e: usize) -> Self {
        Self::one().sub(&Self::monomial(c, e))
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Cyclo {
        self.coeffs.get(i).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Cyclo::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a PolynomialT>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Exact quotient; fails when the division leaves a remainder.
    pub fn exact_div(&self, other: &Self) -> Result<Self> {
        let lead = other.coeffs.last().ok_or(QksError::DivisionByZero)?.inv()?;
        let mut r = self.coeffs.clone();
        if r.len() < other.coeffs.len() {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(QksError::Unsupported("inexact polynomial division".into()))
            };
        }
        let shift_max = r.len() - other.coeffs.len();
        let mut q = vec![Cyclo::zero(); shift_max + 1];
        for shift in (0..=shift_max).rev() {
            let c = &r[shift + other.coeffs.len() - 1] * &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in other.coeffs.iter().enumerate() {
                r[shift + i] -= &(&c * b);
            }
            q[shift] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(QksError::Unsupported("inexact polynomial division".into()));
        }
        Ok(Self::new(q))
    }
}

impl fmt::Display for PolynomialT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !text[1..].contains([' ']);
            if negative {
                text.remove(0);
            }
            let compound = text.contains(' ');
            let body = match (e, text.as_str()) {
                (0, _) => text.clone(),
                (_, "1") => String::new(),
                _ if compound => format!("({text})*"),
                _ => format!("{text}*"),
            };
            let power = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            let term = format!("{body}{power}");
            if out.is_empty() {
                out = if negative { format!("-{term}") } else { term };
            } else {
                out.push_str(if negative { " - " } else { " + " });
                out.push_str(&term);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = PolynomialT::one_minus(Cyclo::one(), 2);
        let b = PolynomialT::from_integers(&[1, 1]);
        assert_eq!(a.to_string(), "1 - t^2");
        assert_eq!(a.exact_div(&b).unwrap(), PolynomialT::from_integers(&[1, -1]));
        assert!(a.exact_div(&PolynomialT::from_integers(&[2, 1])).is_err());
        assert_eq!(b.pow(2).to_string(), "1 + 2*t + t^2");
    }
}
