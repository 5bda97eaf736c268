use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{QksError, Result};

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_monic_division(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[derive(Debug)]
struct Field {
    conductor: u32,
    phi: usize,
    /// Φ_N, monic, lowest degree first.
    modulus: Vec<Rational>,
    /// Sparse reductions of x^(φ+t), t = 0..φ.
    reductions: Vec<Vec<(usize, Rational)>>,
}

impl Field {
    fn new(conductor: u32) -> Field {
        let modulus: Vec<Rational> = cyclotomic_polynomial(conductor)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let phi = modulus.len() - 1;
        let mut current: Vec<Rational> = modulus[..phi].iter().map(|c| -c).collect();
        let mut reductions: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(phi);
        for _ in 0..phi {
            reductions.push(
                current
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
            let top = current[phi - 1].clone();
            let mut next = vec![Rational::zero(); phi];
            next[1..phi].clone_from_slice(&current[..phi - 1]);
            if !top.is_zero() {
                for (i, c) in reductions[0].iter() {
                    next[*i] += &top * c;
                }
            }
            current = next;
        }
        Field {
            conductor,
            phi,
            modulus,
            reductions,
        }
    }

    /// Reduces a polynomial of arbitrary degree modulo Φ_N.
    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let phi = self.phi;
        if poly.len() <= phi {
            poly.resize(phi, Rational::zero());
            return poly;
        }
        for t in (phi..poly.len()).rev() {
            if poly[t].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[t], Rational::zero());
            let shift = t - phi;
            for (i, m) in self.modulus[..phi].iter().enumerate() {
                if !m.is_zero() {
                    poly[shift + i] -= &c * m;
                }
            }
        }
        poly.truncate(phi);
        poly
    }
}

/// An exact element of the cyclotomic field Q(ζ_N), stored in the power basis
/// 1, ζ, ..., ζ^(φ(N)-1).
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<Field>,
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    /// Builds ζ_N-polynomial `c0 + c1 ζ + ...` of any length, reducing modulo Φ_N.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 {
            return Err(QksError::InvalidAlgebra("conductor must be positive".into()));
        }
        let field = Arc::new(Field::new(conductor));
        let coeffs = field.reduce(coeffs);
        Ok(CyclotomicNumber { field, coeffs })
    }

    fn in_field(field: &Arc<Field>, coeffs: Vec<Rational>) -> Self {
        CyclotomicNumber {
            field: Arc::clone(field),
            coeffs,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        static RATIONALS: OnceLock<Arc<Field>> = OnceLock::new();
        let field = RATIONALS.get_or_init(|| Arc::new(Field::new(1)));
        CyclotomicNumber {
            field: Arc::clone(field),
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The rational p/q.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// ζ_N^j, stored at conductor N / gcd(j, N).
    pub fn primitive_root_of_unity(j: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let j = j.rem_euclid(n as i64) as u32;
        let g = j.gcd(&n);
        let (m, e) = if j == 0 { (1, 0) } else { (n / g, j / g) };
        let field = Arc::new(Field::new(m));
        let mut poly = vec![Rational::zero(); e as usize + 1];
        poly[e as usize] = Rational::one();
        let coeffs = field.reduce(poly);
        CyclotomicNumber { field, coeffs }
    }

    /// ζ_N itself.
    pub fn zeta(n: u32) -> Self {
        Self::primitive_root_of_unity(1, n)
    }

    /// The square root of -1 used throughout, ζ_4.
    pub fn i() -> Self {
        Self::zeta(4)
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_one()
    }

    /// Re-expresses the value over Q(ζ_M).
    pub fn coerce_conductor(&self, m: u32) -> Result<Self> {
        let n = self.conductor();
        if m == 0 || !m.is_multiple_of(n) {
            return Err(QksError::ConductorMismatch { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        Ok(self.coerce_to(&Arc::new(Field::new(m))))
    }

    fn coerce_to(&self, target: &Arc<Field>) -> Self {
        let r = (target.conductor / self.conductor()) as usize;
        if r == 1 {
            return Self::in_field(target, self.coeffs.clone());
        }
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * r + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * r] = c.clone();
        }
        Self::in_field(target, target.reduce(poly))
    }

    /// Brings two operands to a common field.
    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        let (n, m) = (a.conductor(), b.conductor());
        if n == m {
            (a.clone(), b.clone())
        } else if m % n == 0 {
            (a.coerce_to(&b.field), b.clone())
        } else if n % m == 0 {
            (a.clone(), b.coerce_to(&a.field))
        } else {
            let field = Arc::new(Field::new(n.lcm(&m)));
            (a.coerce_to(&field), b.coerce_to(&field))
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::in_field(&self.field, vec![Rational::zero(); self.coeffs.len()]);
        }
        Self::in_field(&self.field, self.coeffs.iter().map(|c| c * r).collect())
    }

    fn mul_same_field(&self, other: &Self) -> Self {
        let phi = self.field.phi;
        if phi == 1 {
            return Self::in_field(&self.field, vec![&self.coeffs[0] * &other.coeffs[0]]);
        }
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = prod.drain(..phi).collect();
        for (t, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.reductions[t].iter() {
                out[*i] += &c * r;
            }
        }
        Self::in_field(&self.field, out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QksError::DivisionByZero);
        }
        if self.is_rational() {
            let r = self.coeffs[0].recip();
            let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
            coeffs[0] = r;
            return Ok(Self::in_field(&self.field, coeffs));
        }
        // Invariant: s_i * a ≡ r_i (mod Φ).
        let mut r0 = trim(self.field.modulus.clone());
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ is irreducible.
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(Self::in_field(&self.field, self.field.reduce(inv)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::in_field(&self.field, unit_vec(self.coeffs.len()));
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Smallest m ≥ 1 with self^m = 1, if self is a root of unity.
    pub fn multiplicative_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let bound = 2u32.lcm(&self.conductor());
        let mut p = self.clone();
        for m in 1..=bound {
            if p.is_one() {
                return Some(m);
            }
            p = &p * self;
        }
        None
    }
}

fn unit_vec(len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[0] = Rational::one();
    v
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], trim(rem));
    }
    let lead = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        let (a, b) = Self::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = if self.conductor() == other.conductor() {
            (self.clone(), other)
        } else {
            let (a, b) = CyclotomicNumber::unify(self, other);
            return &a + &b;
        };
        let coeffs = a.coeffs.iter().zip(b.coeffs.iter()).map(|(x, y)| x + y).collect();
        CyclotomicNumber::in_field(&a.field, coeffs)
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        self + &(-other)
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, other: &CyclotomicNumber) -> CyclotomicNumber {
        if self.conductor() == other.conductor() {
            return self.mul_same_field(other);
        }
        if other.is_rational() && self.conductor().is_multiple_of(other.conductor()) {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() && other.conductor().is_multiple_of(self.conductor()) {
            return other.scale(&self.coeffs[0]);
        }
        let (a, b) = CyclotomicNumber::unify(self, other);
        a.mul_same_field(&b)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber::in_field(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, other: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$f(&other)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, other: &CyclotomicNumber) -> CyclotomicNumber {
                (&self).$f(other)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, other: &CyclotomicNumber) {
        if self.conductor() == other.conductor() {
            for (x, y) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
                *x += y;
            }
        } else {
            *self = &*self + other;
        }
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, other: &CyclotomicNumber) {
        if self.conductor() == other.conductor() {
            for (x, y) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
                *x -= y;
            }
        } else {
            *self = &*self - other;
        }
    }
}

impl From<i64> for CyclotomicNumber {
    fn from(n: i64) -> Self {
        CyclotomicNumber::from_integer(n)
    }
}

impl From<Rational> for CyclotomicNumber {
    fn from(r: Rational) -> Self {
        CyclotomicNumber::from_rational(r)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write_rational(f, &mag)?,
                _ => {
                    if !mag.is_one() {
                        write_rational(f, &mag)?;
                        write!(f, "*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self, self.conductor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_ratio(p, d)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_polynomial(n)
                .iter()
                .map(|c| i64::try_from(c).unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        for n in 1..30 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn i_squared() {
        let i = CyclotomicNumber::zeta(4);
        assert_eq!(&i * &i, q(-1, 1));
    }

    #[test]
    fn cube_roots_sum() {
        let z = CyclotomicNumber::zeta(3);
        assert_eq!(&z + &(&z * &z), q(-1, 1));
    }

    #[test]
    fn divide_by_self() {
        let z = CyclotomicNumber::zeta(8);
        let x = &q(1, 2) * &z;
        assert_eq!(x.checked_div(&z).unwrap(), q(1, 2));
        assert_eq!(x.checked_div(&q(0, 1)), Err(QksError::DivisionByZero));
    }

    #[test]
    fn roots_reduce_their_conductor() {
        assert!(CyclotomicNumber::primitive_root_of_unity(1, 1).is_one());
        assert_eq!(CyclotomicNumber::primitive_root_of_unity(1, 2), q(-1, 1));
        let i = CyclotomicNumber::primitive_root_of_unity(2, 8);
        assert_eq!(i.conductor(), 4);
        assert_eq!(&i * &i, q(-1, 1));
    }

    #[test]
    fn coercion() {
        let one = CyclotomicNumber::one().coerce_conductor(12).unwrap();
        assert_eq!(one.conductor(), 12);
        assert!(one.is_one());
        let m = CyclotomicNumber::zeta(2).coerce_conductor(6).unwrap();
        assert_eq!(m, CyclotomicNumber::primitive_root_of_unity(3, 6));
        assert!(CyclotomicNumber::zeta(4).coerce_conductor(6).is_err());
    }

    #[test]
    fn display() {
        let i = CyclotomicNumber::i();
        assert_eq!((&q(1, 2) - &i).to_string(), "1/2 - z");
        assert_eq!(q(0, 1).to_string(), "0");
        let z = CyclotomicNumber::zeta(5);
        assert_eq!((&z * &z).to_string(), "z^2");
    }

    #[test]
    fn orders() {
        for n in 1..=12u32 {
            for j in 0..n as i64 {
                let z = CyclotomicNumber::primitive_root_of_unity(j, n);
                let g = (j as u32).gcd(&n);
                assert_eq!(z.multiplicative_order(), Some(n / g), "j={j} n={n}");
            }
        }
        assert_eq!(q(2, 1).multiplicative_order(), None);
    }
}
