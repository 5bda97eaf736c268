use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

/// The defining relation of the base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// `vu = uv`.
    Commutative,
    /// `vu = q uv`.
    QuantumPlane(CyclotomicNumber),
    /// `vu = uv + u²`.
    JordanPlane,
}

/// The PBW monomial `u^a v^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: i32,
    pub b: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };

    pub fn new(a: i32, b: i32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(&self) -> i32 {
        self.a + self.b
    }

    fn shift(&self, a: i32, b: i32) -> Monomial {
        Monomial::new(self.a + a, self.b + b)
    }
}

/// Normal-form terms of a polynomial.
pub type Terms = BTreeMap<Monomial, CyclotomicNumber>;

pub(crate) fn add_term(terms: &mut Terms, m: Monomial, c: &CyclotomicNumber) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

/// A base algebra together with its localization data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    kind: AlgebraKind,
    invert_u: bool,
    invert_v: bool,
    denominators: Vec<Terms>,
    q_order: Option<u32>,
    q_powers: Vec<CyclotomicNumber>,
}

impl AlgebraSpec {
    /// Builds a base algebra with `u` and/or `v` inverted.
    pub fn new(kind: AlgebraKind, invert_u: bool, invert_v: bool) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(kind, invert_u, invert_v)?))
    }

    fn build(kind: AlgebraKind, invert_u: bool, invert_v: bool) -> Result<Self> {
        let (q_order, q_powers) = match &kind {
            AlgebraKind::QuantumPlane(q) => {
                if q.is_zero() {
                    return Err(QksError::InvalidAlgebra("q must be nonzero".into()));
                }
                match q.multiplicative_order() {
                    Some(k) => {
                        let mut powers = Vec::with_capacity(k as usize);
                        let mut p = CyclotomicNumber::one();
                        for _ in 0..k {
                            powers.push(p.clone());
                            p = &p * q;
                        }
                        (Some(k), powers)
                    }
                    None => (None, vec![]),
                }
            }
            AlgebraKind::JordanPlane => {
                if invert_v {
                    return Err(QksError::InvalidAlgebra(
                        "the Jordan plane admits only u as an inverted generator".into(),
                    ));
                }
                (None, vec![])
            }
            AlgebraKind::Commutative => (Some(1), vec![CyclotomicNumber::one()]),
        };
        Ok(AlgebraSpec {
            kind,
            invert_u,
            invert_v,
            denominators: vec![],
            q_order,
            q_powers,
        })
    }

    pub fn commutative() -> Arc<Self> {
        Self::new(AlgebraKind::Commutative, false, false).expect("valid")
    }

    pub fn quantum(q: CyclotomicNumber) -> Result<Arc<Self>> {
        Self::new(AlgebraKind::QuantumPlane(q), false, false)
    }

    pub fn jordan() -> Arc<Self> {
        Self::new(AlgebraKind::JordanPlane, false, false).expect("valid")
    }

    /// Same relation with the given generators inverted.
    pub fn localized(&self, invert_u: bool, invert_v: bool) -> Result<Arc<Self>> {
        let mut spec = Self::build(self.kind.clone(), invert_u, invert_v)?;
        spec.denominators = self.denominators.clone();
        Ok(Arc::new(spec))
    }

    /// Adjoins inverses of central, nonzero, homogeneous elements.
    pub fn with_denominators(&self, dens: Vec<Terms>) -> Result<Arc<Self>> {
        let mut spec = self.clone();
        for d in dens {
            if d.is_empty() {
                return Err(QksError::InvalidAlgebra("zero denominator".into()));
            }
            let deg = d.keys().next().expect("nonempty").degree();
            if d.keys().any(|m| m.degree() != deg) {
                return Err(QksError::InvalidAlgebra("denominators must be homogeneous".into()));
            }
            for m in d.keys() {
                self.check_monomial(*m)?;
            }
            for g in [Monomial::new(1, 0), Monomial::new(0, 1)] {
                let gt: Terms = [(g, CyclotomicNumber::one())].into_iter().collect();
                if self.mul_terms(&gt, &d) != self.mul_terms(&d, &gt) {
                    return Err(QksError::InvalidAlgebra("denominator is not central".into()));
                }
            }
            spec.denominators.push(d);
        }
        Ok(Arc::new(spec))
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn invert_u(&self) -> bool {
        self.invert_u
    }

    pub fn invert_v(&self) -> bool {
        self.invert_v
    }

    pub fn denominators(&self) -> &[Terms] {
        &self.denominators
    }

    /// Order of q as a root of unity (1 for the commutative plane).
    pub fn q_order(&self) -> Option<u32> {
        match self.kind {
            AlgebraKind::JordanPlane => None,
            _ => self.q_order,
        }
    }

    /// The commutation scalar `q` (1 when commutative); `None` for the Jordan plane.
    pub fn q(&self) -> Option<CyclotomicNumber> {
        match &self.kind {
            AlgebraKind::Commutative => Some(CyclotomicNumber::one()),
            AlgebraKind::QuantumPlane(q) => Some(q.clone()),
            AlgebraKind::JordanPlane => None,
        }
    }

    pub(crate) fn q_pow(&self, e: i64) -> CyclotomicNumber {
        match self.q_order {
            Some(k) => self.q_powers[e.rem_euclid(k as i64) as usize].clone(),
            None => match &self.kind {
                AlgebraKind::QuantumPlane(q) => q.pow(e).expect("q is nonzero"),
                _ => CyclotomicNumber::one(),
            },
        }
    }

    /// Fails if the monomial uses an inverse that is not adjoined.
    pub fn check_monomial(&self, m: Monomial) -> Result<()> {
        if (m.a < 0 && !self.invert_u) || (m.b < 0 && !self.invert_v) {
            return Err(QksError::NotInvertible(format!(
                "monomial u^{} v^{} needs an inverse that is not adjoined",
                m.a, m.b
            )));
        }
        Ok(())
    }

    /// Whether `u^a v^b` is a unit.
    pub fn is_unit_monomial(&self, m: Monomial) -> bool {
        (m.a == 0 || self.invert_u) && (m.b == 0 || self.invert_v)
    }

    /// Product of two normal-form monomials.
    pub fn mul_monomials(&self, x: Monomial, y: Monomial) -> Terms {
        let mut out = Terms::new();
        match &self.kind {
            AlgebraKind::Commutative => {
                out.insert(x.shift(y.a, y.b), CyclotomicNumber::one());
            }
            AlgebraKind::QuantumPlane(_) => {
                out.insert(x.shift(y.a, y.b), self.q_pow(x.b as i64 * y.a as i64));
            }
            AlgebraKind::JordanPlane => {
                for (m, c) in jordan_v_power_times_u_power(x.b, y.a) {
                    out.insert(m.shift(x.a, y.b), c);
                }
            }
        }
        out
    }

    /// Product of two term maps.
    pub fn mul_terms(&self, x: &Terms, y: &Terms) -> Terms {
        let mut out = Terms::new();
        for (mx, cx) in x {
            for (my, cy) in y {
                let c = cx * cy;
                for (m, d) in self.mul_monomials(*mx, *my) {
                    add_term(&mut out, m, &(&c * &d));
                }
            }
        }
        out
    }

    /// Product `Π D_i^{e_i}` of the adjoined denominators.
    pub fn denominator_power(&self, exps: &[u32]) -> Terms {
        let mut acc: Terms = [(Monomial::ONE, CyclotomicNumber::one())].into_iter().collect();
        for (d, e) in self.denominators.iter().zip(exps) {
            for _ in 0..*e {
                acc = self.mul_terms(&acc, d);
            }
        }
        acc
    }

    pub fn denominator_degree(&self, exps: &[u32]) -> i32 {
        self.denominators
            .iter()
            .zip(exps)
            .map(|(d, e)| d.keys().next().expect("nonempty").degree() * *e as i32)
            .sum()
    }
}

/// `v^b u^c` in the Jordan plane, by repeated left multiplication with `v`.
fn jordan_v_power_times_u_power(b: i32, c: i32) -> Terms {
    assert!(b >= 0, "v is never inverted in the Jordan plane");
    let mut cur: Terms = [(Monomial::new(c, 0), CyclotomicNumber::one())]
        .into_iter()
        .collect();
    for _ in 0..b {
        let mut next = Terms::new();
        for (m, coef) in &cur {
            // v u^x v^y = u^x v^{y+1} + x u^{x+1} v^y
            add_term(&mut next, m.shift(0, 1), coef);
            if m.a != 0 {
                add_term(
                    &mut next,
                    m.shift(1, 0),
                    &(coef * &CyclotomicNumber::from_integer(m.a as i64)),
                );
            }
        }
        cur = next;
    }
    cur
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match &self.kind {
            AlgebraKind::Commutative => "k".to_string(),
            AlgebraKind::QuantumPlane(q) => format!("k_({q})"),
            AlgebraKind::JordanPlane => "k_J".to_string(),
        };
        let var = |name: &str, inv: bool| {
            if inv {
                format!("{name}^±1")
            } else {
                name.to_string()
            }
        };
        write!(f, "{base}[{}, {}]", var("u", self.invert_u), var("v", self.invert_v))?;
        for d in &self.denominators {
            write!(f, "[({})^-1]", format_terms(d))?;
        }
        Ok(())
    }
}

fn format_power(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

/// Renders terms as `c*u^a*v^b + ...`, highest degree first.
pub fn format_terms(terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut ordered: Vec<_> = terms.iter().collect();
    ordered.sort_by_key(|(m, _)| {
        use std::cmp::Reverse;
        (Reverse(m.degree()), Reverse(m.a.abs() + m.b.abs()), Reverse(m.a))
    });
    let mut out = String::new();
    for (k, (m, c)) in ordered.into_iter().enumerate() {
        let vars: Vec<String> = [format_power("u", m.a), format_power("v", m.b)]
            .into_iter()
            .flatten()
            .collect();
        let cs = c.to_string();
        let simple = c.to_rational().is_some();
        let (neg, mag) = if simple && cs.starts_with('-') {
            (true, cs[1..].to_string())
        } else {
            (false, cs)
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coef = if simple { mag } else { format!("({mag})") };
        if vars.is_empty() {
            out.push_str(&coef);
        } else {
            if coef != "1" {
                out.push_str(&coef);
                out.push('*');
            }
            out.push_str(&vars.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(a: i32, b: i32) -> Terms {
        [(Monomial::new(a, b), CyclotomicNumber::one())].into_iter().collect()
    }

    #[test]
    fn jordan_basic_relation() {
        let j = AlgebraSpec::jordan();
        let p = j.mul_terms(&single(0, 1), &single(1, 0));
        assert_eq!(format_terms(&p), "u^2 + u*v");
    }

    #[test]
    fn jordan_with_inverse() {
        let j = AlgebraSpec::jordan().localized(true, false).unwrap();
        let p = j.mul_terms(&single(0, 1), &single(-1, 0));
        assert_eq!(format_terms(&p), "u^-1*v - 1");
    }

    #[test]
    fn quantum_relation() {
        let q = CyclotomicNumber::from_integer(3);
        let a = AlgebraSpec::quantum(q.clone()).unwrap();
        let p = a.mul_terms(&single(0, 1), &single(1, 0));
        assert_eq!(p.get(&Monomial::new(1, 1)), Some(&q));
    }

    #[test]
    fn jordan_rejects_inverted_v() {
        assert!(AlgebraSpec::new(AlgebraKind::JordanPlane, false, true).is_err());
    }

    #[test]
    fn noncentral_denominator_rejected() {
        let a = AlgebraSpec::quantum(CyclotomicNumber::from_integer(-1)).unwrap();
        assert!(a.with_denominators(vec![single(1, 0)]).is_err());
        let mut d = single(2, 0);
        d.insert(Monomial::new(0, 2), CyclotomicNumber::from_integer(-1));
        assert!(a.with_denominators(vec![d]).is_ok());
    }
}
