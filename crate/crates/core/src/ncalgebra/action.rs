use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{add_term, AlgebraKind, AlgebraSpec, Monomial, Terms};
use super::group::{GroupElement, GroupSpec, MonomialAction};
use super::poly::NCPoly;
use crate::error::{QksError, Result};
use crate::scalar::CyclotomicNumber;

pub(crate) fn apply_to_terms(
    algebra: &AlgebraSpec,
    group: &GroupSpec,
    act: MonomialAction,
    terms: &Terms,
) -> Terms {
    let mut out = Terms::new();
    for (m, c) in terms {
        let coef = c * &group.omega_pow(act.eu * m.a as i64 + act.ev * m.b as i64);
        if act.swap {
            // (λu)^a (μv)^b ↦ (λv)^a (μu)^b = λ^a μ^b v^a u^b
            for (m2, c2) in algebra.mul_monomials(Monomial::new(0, m.a), Monomial::new(m.b, 0)) {
                add_term(&mut out, m2, &(&coef * &c2));
            }
        } else {
            add_term(&mut out, *m, &coef);
        }
    }
    out
}

/// Writes `x = λ·y` if possible.
fn proportionality(x: &Terms, y: &Terms) -> Option<CyclotomicNumber> {
    let (m, cy) = y.iter().next()?;
    let cx = x.get(m)?;
    let lambda = cx.checked_div(cy).ok()?;
    let scaled: Terms = y.iter().map(|(m, c)| (*m, c * &lambda)).collect();
    (scaled == *x).then_some(lambda)
}

/// For each adjoined denominator `D_i`, the pair `(λ, j)` with `f·D_i = λ D_j`.
fn denominator_permutation(
    algebra: &AlgebraSpec,
    group: &GroupSpec,
    f: GroupElement,
) -> Result<Vec<(CyclotomicNumber, usize)>> {
    let act = group.action(f);
    let dens = algebra.denominators();
    let mut out = Vec::with_capacity(dens.len());
    for d in dens {
        let image = apply_to_terms(algebra, group, act, d);
        let found = dens
            .iter()
            .enumerate()
            .find_map(|(j, dj)| proportionality(&image, dj).map(|l| (l, j)));
        match found {
            Some(p) => out.push(p),
            None => {
                return Err(QksError::ActionUndefined(format!(
                    "{f} does not map an adjoined denominator to a multiple of one"
                )))
            }
        }
    }
    Ok(out)
}

/// Applies the automorphism induced by `f` to `x`.
pub fn apply_automorphism(group: &GroupSpec, f: GroupElement, x: &NCPoly) -> Result<NCPoly> {
    let algebra = x.algebra();
    let act = group.action(f);
    if act.swap && matches!(algebra.kind(), AlgebraKind::JordanPlane) {
        return Err(QksError::ActionUndefined(
            "the swap does not preserve the Jordan relation".into(),
        ));
    }
    if act.swap && algebra.invert_u() != algebra.invert_v() {
        return Err(QksError::ActionUndefined(
            "the swap needs u and v inverted alike".into(),
        ));
    }
    let mut terms = apply_to_terms(algebra, group, act, x.terms());
    if !x.has_denominator() {
        return Ok(NCPoly::from_parts(algebra, terms, x.denominator().to_vec()));
    }
    let perm = denominator_permutation(algebra, group, f)?;
    let mut den = vec![0u32; perm.len()];
    let mut factor = CyclotomicNumber::one();
    for (i, e) in x.denominator().iter().enumerate() {
        let (lambda, j) = &perm[i];
        den[*j] += e;
        factor = &factor * &lambda.pow(-(*e as i64))?;
    }
    for c in terms.values_mut() {
        *c = &*c * &factor;
    }
    Ok(NCPoly::from_parts(algebra, terms, den))
}

type Word = Vec<u8>;

/// The defining relation as an element of the free algebra on `u = 0`, `v = 1`.
fn relation_words(kind: &AlgebraKind) -> BTreeMap<Word, CyclotomicNumber> {
    let one = CyclotomicNumber::one();
    let minus = CyclotomicNumber::from_integer(-1);
    let mut r = BTreeMap::new();
    r.insert(vec![1, 0], one.clone());
    match kind {
        AlgebraKind::Commutative => {
            r.insert(vec![0, 1], minus);
        }
        AlgebraKind::QuantumPlane(q) => {
            r.insert(vec![0, 1], -q);
        }
        AlgebraKind::JordanPlane => {
            r.insert(vec![0, 1], minus.clone());
            r.insert(vec![0, 0], minus);
        }
    }
    r
}

type Mat2 = [[CyclotomicNumber; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let entry = |r: usize, c: usize| &(&x[r][0] * &y[0][c]) + &(&x[r][1] * &y[1][c]);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

fn is_identity(m: &Mat2) -> bool {
    m[0][0].is_one() && m[1][1].is_one() && m[0][1].is_zero() && m[1][0].is_zero()
}

/// Whether the generator action of `G` extends to automorphisms of `A`.
pub fn check_action_well_defined(algebra: &AlgebraSpec, group: &GroupSpec) -> bool {
    let relation = relation_words(algebra.kind());
    for f in group.generators() {
        let m = group.matrix(f);
        // image of a word: product of linear forms, each column of m
        let mut image: BTreeMap<Word, CyclotomicNumber> = BTreeMap::new();
        for (word, c) in &relation {
            let mut partial: Vec<(Word, CyclotomicNumber)> = vec![(vec![], c.clone())];
            for &letter in word {
                let col = letter as usize;
                let mut next = vec![];
                for (w, coef) in &partial {
                    for row in 0..2u8 {
                        let e = &m[row as usize][col];
                        if !e.is_zero() {
                            let mut w2 = w.clone();
                            w2.push(row);
                            next.push((w2, coef * e));
                        }
                    }
                }
                partial = next;
            }
            for (w, coef) in partial {
                let entry = image.entry(w).or_insert_with(CyclotomicNumber::zero);
                *entry += &coef;
            }
        }
        image.retain(|_, c| !c.is_zero());
        let (w0, c0) = relation.iter().next().expect("relation nonempty");
        let Some(ci) = image.get(w0) else {
            return false;
        };
        let Ok(lambda) = ci.checked_div(c0) else {
            return false;
        };
        let scaled: BTreeMap<Word, CyclotomicNumber> =
            relation.iter().map(|(w, c)| (w.clone(), c * &lambda)).collect();
        if scaled != image {
            return false;
        }
        let act = group.action(f);
        if act.swap && algebra.invert_u() != algebra.invert_v() {
            return false;
        }
    }
    let g = group.matrix(GroupElement::new(1, 0));
    let h = group.matrix(GroupElement::new(0, 1));
    let power = |m: &Mat2, e: u32| {
        let mut acc = group.matrix(GroupElement::IDENTITY);
        for _ in 0..e {
            acc = mat_mul(&acc, m);
        }
        acc
    };
    let relations_hold = match group.kind() {
        super::GroupKind::Cyclic(n) => is_identity(&power(&g, n)),
        super::GroupKind::Sym2 => is_identity(&power(&h, 2)),
        super::GroupKind::Dihedral(n) => {
            is_identity(&power(&g, n))
                && is_identity(&power(&h, 2))
                && is_identity(&power(&mat_mul(&h, &g), 2))
        }
    };
    if !relations_hold {
        return false;
    }
    group.elements().iter().all(|f| denominator_permutation(algebra, group, *f).is_ok())
}

/// Whether `f` acts on `A` as conjugation by the unit `c`: `c·u = (f·u)·c`
/// and `c·v = (f·v)·c`.
pub fn check_inner_by(
    algebra: &Arc<AlgebraSpec>,
    group: &GroupSpec,
    f: GroupElement,
    c: &NCPoly,
) -> Result<bool> {
    if c.as_unit_monomial().is_none() {
        return Err(QksError::NotInvertible(c.to_string()));
    }
    for x in [NCPoly::u(algebra), NCPoly::v(algebra)] {
        let fx = apply_automorphism(group, f, &x)?;
        if c.mul(&x)? != fx.mul(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1() -> CyclotomicNumber {
        CyclotomicNumber::from_integer(-1)
    }

    #[test]
    fn rotation_weights() {
        let a = AlgebraSpec::quantum(CyclotomicNumber::zeta(5)).unwrap();
        let g = GroupSpec::cyclic(5);
        let x = NCPoly::monomial(&a, 2, 1, CyclotomicNumber::one()).unwrap();
        let y = apply_automorphism(&g, GroupElement::new(1, 0), &x).unwrap();
        assert_eq!(y, x.scale(&CyclotomicNumber::zeta(5)));
    }

    #[test]
    fn swap_in_minus_one_plane() {
        let a = AlgebraSpec::quantum(m1()).unwrap();
        let s = GroupSpec::sym2();
        let uv = NCPoly::u(&a).mul(&NCPoly::v(&a)).unwrap();
        let y = apply_automorphism(&s, GroupElement::new(0, 1), &uv).unwrap();
        assert_eq!(y, uv.neg());
    }

    #[test]
    fn well_defined_actions() {
        let qa = AlgebraSpec::quantum(CyclotomicNumber::zeta(3)).unwrap();
        assert!(check_action_well_defined(&qa, &GroupSpec::cyclic(4)));
        assert!(!check_action_well_defined(&qa, &GroupSpec::sym2()));
        let m = AlgebraSpec::quantum(m1()).unwrap();
        assert!(check_action_well_defined(&m, &GroupSpec::dihedral(3)));
        assert!(check_action_well_defined(&AlgebraSpec::jordan(), &GroupSpec::cyclic(2)));
        assert!(!check_action_well_defined(&AlgebraSpec::jordan(), &GroupSpec::cyclic(3)));
        assert!(!check_action_well_defined(&AlgebraSpec::jordan(), &GroupSpec::sym2()));
    }

    #[test]
    fn inner_certificates() {
        let a = AlgebraSpec::new(AlgebraKind::QuantumPlane(m1()), true, true).unwrap();
        let c2 = GroupSpec::cyclic(2);
        let c = NCPoly::monomial(&a, -1, -1, CyclotomicNumber::one()).unwrap();
        assert!(check_inner_by(&a, &c2, GroupElement::new(1, 0), &c).unwrap());
        let j = AlgebraSpec::jordan().localized(true, false).unwrap();
        for k in 0..=3 {
            let c = NCPoly::monomial(&j, k, 0, CyclotomicNumber::one()).unwrap();
            assert!(!check_inner_by(&j, &c2, GroupElement::new(1, 0), &c).unwrap());
        }
        let nonunit = NCPoly::u(&AlgebraSpec::jordan());
        assert!(check_inner_by(&AlgebraSpec::jordan(), &c2, GroupElement::new(1, 0), &nonunit).is_err());
    }
}
