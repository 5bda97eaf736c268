use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CyclotomicNumber, Rational};
use crate::error::{QksError, Result};

/// Parses a rational such as `-3`, `2/5` or `+7/1`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || QksError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().trim_start_matches('+').parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(QksError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim_start_matches('+').parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Parses `c0 + c1*z + c2*z^2 ...` where `z` is ζ_N. The symbol `i` denotes ζ_4
/// and forces 4 to divide the conductor of the result.
pub fn parse_cyclotomic(s: &str, conductor: u32) -> Result<CyclotomicNumber> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(QksError::Parse("empty number".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    for k in 1..bytes.len() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && bytes[k - 1] != b'^' && bytes[k - 1] != b'/' && bytes[k - 1] != b'*' {
            terms.push(&text[start..k]);
            start = k;
        }
    }
    terms.push(&text[start..]);
    let zeta = CyclotomicNumber::zeta(conductor);
    let mut acc = CyclotomicNumber::zero();
    for term in terms {
        acc = &acc + &parse_term(term, &zeta)?;
    }
    if acc.conductor() == conductor || conductor.is_multiple_of(acc.conductor()) {
        acc.coerce_conductor(conductor)
    } else {
        Ok(acc)
    }
}

fn parse_term(term: &str, zeta: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    if body.is_empty() {
        return Err(QksError::Parse(format!("dangling sign in {term:?}")));
    }
    let mut value = CyclotomicNumber::from_integer(sign);
    for factor in body.split('*') {
        let f = parse_factor(factor, zeta)?;
        value = &value * &f;
    }
    Ok(value)
}

fn parse_factor(factor: &str, zeta: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    let (base, exp) = match factor.split_once('^') {
        Some((b, e)) => {
            let e: i64 = e
                .trim_matches(|c| c == '(' || c == ')')
                .parse()
                .map_err(|_| QksError::Parse(format!("bad exponent in {factor:?}")))?;
            (b, e)
        }
        None => (factor, 1),
    };
    let b = match base {
        "z" => zeta.clone(),
        "i" => CyclotomicNumber::i(),
        _ => {
            let r = parse_rational(base)?;
            if r.is_one() && exp != 1 {
                return Ok(CyclotomicNumber::one());
            }
            CyclotomicNumber::from_rational(r)
        }
    };
    b.pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let z = CyclotomicNumber::zeta(12);
        let x = &(&z * &z) + &CyclotomicNumber::from_ratio(-3, 7);
        let parsed = parse_cyclotomic(&x.to_string(), 12).unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn liberal_forms() {
        let i = CyclotomicNumber::i();
        assert_eq!(parse_cyclotomic("2*i", 4).unwrap(), &i + &i);
        assert_eq!(parse_cyclotomic("z^-1", 4).unwrap(), -&i);
        assert_eq!(parse_cyclotomic(" -1/2 ", 1).unwrap(), CyclotomicNumber::from_ratio(-1, 2));
        assert!(parse_cyclotomic("x", 3).is_err());
        assert!(parse_cyclotomic("1/0", 3).is_err());
    }
}
