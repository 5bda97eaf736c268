use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

type Cyclo = CyclotomicNumber;

/// Dense univariate polynomial, constant term first, no trailing zeros.
pub(crate) type Poly = Vec<Cyclo>;

pub(crate) fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul(a: &[Cyclo], b: &[Cyclo]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Cyclo::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += &(x * y);
            }
        }
    }
    trim(out)
}

fn poly_sub(a: &[Cyclo], b: &[Cyclo]) -> Poly {
    let n = a.len().max(b.len());
    let z = Cyclo::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Quotient and remainder of `a` by a nonzero `b`.
fn poly_divmod(a: &[Cyclo], b: &[Cyclo]) -> Result<(Poly, Poly)> {
    let b = trim(b.to_vec());
    let lead = b.last().ok_or(QksError::DivisionByZero)?.inv()?;
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return Ok((vec![], r));
    }
    let mut q = vec![Cyclo::zero(); r.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") * &lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &(&c * bc);
        }
        q[shift] = c;
        r = trim(r);
    }
    Ok((trim(q), r))
}

/// The ring `k[s]/(p)` for a monic `p` of positive degree.
#[derive(Clone, Debug)]
pub(crate) struct QuotientRing {
    modulus: Poly,
}

impl QuotientRing {
    pub fn new(modulus: Poly) -> Result<Self> {
        let modulus = trim(modulus);
        if modulus.len() < 2 {
            return Err(QksError::InconsistentRecipe("the base polynomial must have positive degree".into()));
        }
        if !modulus.last().expect("nonempty").is_one() {
            return Err(QksError::InconsistentRecipe("the base polynomial must be monic".into()));
        }
        Ok(QuotientRing { modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, p: &[Cyclo]) -> Poly {
        poly_divmod(p, &self.modulus).expect("monic modulus").1
    }

    pub fn mul(&self, a: &[Cyclo], b: &[Cyclo]) -> Poly {
        self.reduce(&poly_mul(a, b))
    }

    pub fn s(&self) -> Poly {
        self.reduce(&[Cyclo::zero(), Cyclo::one()])
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inverse(&self, a: &[Cyclo]) -> Result<Poly> {
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut t0, mut t1): (Poly, Poly) = (vec![], vec![Cyclo::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1)?;
            let t = poly_sub(&t0, &poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.len() != 1 {
            return Err(QksError::NotInvertible("element shares a factor with the base polynomial".into()));
        }
        let c = r0[0].inv()?;
        Ok(self.reduce(&t0.iter().map(|x| x * &c).collect::<Vec<_>>()))
    }

    pub fn pow(&self, a: &[Cyclo], e: i64) -> Result<Poly> {
        let base = if e < 0 { self.inverse(a)? } else { self.reduce(a) };
        let mut out = vec![Cyclo::one()];
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = self.mul(&out, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b);
            }
        }
        Ok(self.reduce(&out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclo {
        Cyclo::from_integer(n)
    }

    #[test]
    fn inverse_mod_quadratic() {
        // s² - 3s + 2
        let r = QuotientRing::new(vec![c(2), c(-3), c(1)]).unwrap();
        let s = r.s();
        let inv = r.inverse(&s).unwrap();
        assert_eq!(r.mul(&s, &inv), vec![c(1)]);
        // s - 1 divides the modulus
        assert!(r.inverse(&[c(-1), c(1)]).is_err());
    }

    #[test]
    fn negative_powers() {
        let r = QuotientRing::new(vec![c(5), c(0), c(1)]).unwrap();
        let s = r.s();
        assert_eq!(r.pow(&s, 2).unwrap(), vec![c(-5)]);
        assert_eq!(r.mul(&r.pow(&s, -3).unwrap(), &r.pow(&s, 3).unwrap()), vec![c(1)]);
    }
}
