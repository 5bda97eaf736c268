use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{QksError, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::ncalgebra::{AlgebraKind, GroupElement};
use crate::scalar::CyclotomicNumber;
use crate::skewring::{CentralPoint, SkewElement, SkewRing};

use super::algebra::FiniteDimAlgebra;
use super::quotient_ring::{trim, Poly, QuotientRing};

type Cyclo = CyclotomicNumber;

/// Reduction data for a fiber: `u^K ↦ s` with `p(s) = 0`, and `v^K ↦ V(s)`.
///
/// `K` must be a multiple of the order of `q`, so that `u^K` and `v^K` are
/// central in `A`. Residual elements are killed by ideal closure.
#[derive(Clone, Debug)]
pub struct FiberRecipe {
    pub modulus: u32,
    /// Monic `p`, constant term first.
    pub base: Vec<Cyclo>,
    /// `V(s) = Σ c_e s^e`, negative exponents allowed when `p(0) ≠ 0`.
    pub v_image: BTreeMap<i32, Cyclo>,
    pub residual: Vec<SkewElement>,
}

impl FiberRecipe {
    pub fn new(modulus: u32, base: Vec<Cyclo>, v_image: BTreeMap<i32, Cyclo>) -> Self {
        FiberRecipe {
            modulus,
            base,
            v_image,
            residual: vec![],
        }
    }

    pub fn with_residual(mut self, residual: Vec<SkewElement>) -> Self {
        self.residual = residual;
        self
    }
}

/// Reduced monomial basis `s^e u^a v^b f` with `e < deg p`, `a, b < K`, and
/// the multiplication of `A#G` modulo the recipe.
pub struct FiberBuilder {
    ring: Arc<SkewRing>,
    k: usize,
    base: QuotientRing,
    d: usize,
    s_inv: Option<Poly>,
    v_poly: Poly,
    v_inv: Option<Poly>,
    elements: Vec<GroupElement>,
    position: BTreeMap<GroupElement, usize>,
    sigma: Vec<Poly>,
}

impl FiberBuilder {
    pub fn new(ring: &Arc<SkewRing>, recipe: &FiberRecipe) -> Result<Self> {
        let alg = ring.algebra();
        if matches!(alg.kind(), AlgebraKind::JordanPlane) {
            return Err(QksError::Unsupported("fibers of the Jordan plane".into()));
        }
        let k = recipe.modulus as usize;
        if k == 0 {
            return Err(QksError::InconsistentRecipe("modulus must be positive".into()));
        }
        match alg.q_order() {
            Some(o) if k.is_multiple_of(o as usize) => {}
            Some(o) => {
                return Err(QksError::InconsistentRecipe(format!(
                    "modulus {k} is not a multiple of the order {o} of q"
                )))
            }
            None => return Err(QksError::Unsupported("q is not a root of unity".into())),
        }
        let base = QuotientRing::new(recipe.base.clone())?;
        let d = base.degree();
        let s = base.s();
        let s_inv = base.inverse(&s).ok();
        if alg.invert_u() && s_inv.is_none() {
            return Err(QksError::InconsistentRecipe("u is invertible but p(0) = 0".into()));
        }
        let mut v_poly: Poly = vec![];
        for (e, c) in &recipe.v_image {
            let se = if *e < 0 {
                let inv = s_inv
                    .as_ref()
                    .ok_or_else(|| QksError::InconsistentRecipe("V uses 1/s but p(0) = 0".into()))?;
                base.pow(inv, -*e as i64)?
            } else {
                base.pow(&s, *e as i64)?
            };
            v_poly = add(&v_poly, &se.iter().map(|x| x * c).collect::<Vec<_>>());
        }
        let v_poly = base.reduce(&v_poly);
        let v_inv = base.inverse(&v_poly).ok();
        if alg.invert_v() && v_inv.is_none() {
            return Err(QksError::InconsistentRecipe("v is invertible but V(s) is not".into()));
        }
        let group = ring.group();
        let elements = group.elements();
        let position = elements.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let kk = k as i64;
        let mut sigma = vec![];
        for f in &elements {
            let act = group.action(*f);
            let cu = group.omega_pow(act.eu * kk);
            let cv = group.omega_pow(act.ev * kk);
            let (image_s, image_v) = if act.swap {
                (scale(&cu, &v_poly), scale(&cv, &s))
            } else {
                (scale(&cu, &s), scale(&cv, &v_poly))
            };
            // the recipe ideal must be stable under the group
            if !base.reduce(&eval(&base, &recipe.base, &image_s)).is_empty() {
                return Err(QksError::InconsistentRecipe(format!("{f} does not preserve p(s)")));
            }
            let v_of_image = eval_laurent(&base, &recipe.v_image, &image_s)?;
            if !base.reduce(&sub(&image_v, &v_of_image)).is_empty() {
                return Err(QksError::InconsistentRecipe(format!("{f} does not preserve V(s)")));
            }
            sigma.push(base.reduce(&image_s));
        }
        Ok(FiberBuilder {
            ring: Arc::clone(ring),
            k,
            base,
            d,
            s_inv,
            v_poly,
            v_inv,
            elements,
            position,
            sigma,
        })
    }

    pub fn dim(&self) -> usize {
        self.elements.len() * self.k * self.k * self.d
    }

    fn index(&self, e: usize, a: usize, b: usize, f: usize) -> usize {
        ((f * self.k + a) * self.k + b) * self.d + e
    }

    fn coords(&self, i: usize) -> (usize, usize, usize, usize) {
        let e = i % self.d;
        let r = i / self.d;
        let b = r % self.k;
        let r = r / self.k;
        (e, r % self.k, b, r / self.k)
    }

    pub fn label(&self, i: usize) -> String {
        let (e, a, b, f) = self.coords(i);
        let mut parts = vec![];
        let ua = self.k * e + a;
        match ua {
            0 => {}
            1 => parts.push("u".to_string()),
            _ => parts.push(format!("u^{ua}")),
        }
        match b {
            0 => {}
            1 => parts.push("v".to_string()),
            _ => parts.push(format!("v^{b}")),
        }
        let g = self.elements[f];
        if !g.is_identity() {
            parts.push(g.to_string());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// The basis element `u^{Ke+a} v^b f` as an element of `A#G`.
    pub fn basis_element(&self, i: usize) -> SkewElement {
        let (e, a, b, f) = self.coords(i);
        SkewElement::monomial(
            &self.ring,
            (self.k * e + a) as i32,
            b as i32,
            self.elements[f],
            Cyclo::one(),
        )
        .expect("nonnegative monomial")
    }

    fn s_power(&self, e: i64) -> Result<Poly> {
        if e < 0 {
            let inv = self
                .s_inv
                .as_ref()
                .ok_or_else(|| QksError::NotInvertible("s vanishes at this point".into()))?;
            self.base.pow(inv, -e)
        } else {
            self.base.pow(&self.base.s(), e)
        }
    }

    fn v_power(&self, e: i64) -> Result<Poly> {
        if e < 0 {
            let inv = self
                .v_inv
                .as_ref()
                .ok_or_else(|| QksError::NotInvertible("V vanishes at this point".into()))?;
            self.base.pow(inv, -e)
        } else {
            self.base.pow(&self.v_poly, e)
        }
    }

    /// Image of an element of `A#G` in the ambient algebra.
    pub fn reduce(&self, x: &SkewElement) -> Result<SparseVec> {
        if !Arc::ptr_eq(x.ring(), &self.ring) && **x.ring() != *self.ring {
            return Err(QksError::RingMismatch);
        }
        if x.has_denominator() {
            return Err(QksError::Unsupported("elements with denominators in a fiber".into()));
        }
        let k = self.k as i32;
        let mut acc = Accumulator::new();
        for (f, m, c) in x.terms() {
            let (big_e, a) = (m.a.div_euclid(k), m.a.rem_euclid(k));
            let (big_f, b) = (m.b.div_euclid(k), m.b.rem_euclid(k));
            let poly = self
                .base
                .mul(&self.s_power(big_e as i64)?, &self.v_power(big_f as i64)?);
            let fi = self.position[&f];
            for (e, pc) in poly.iter().enumerate() {
                acc.add(self.index(e, a as usize, b as usize, fi), &(pc * c));
            }
        }
        Ok(acc.finish())
    }

    /// Structure constants of the ambient algebra.
    pub fn ambient(&self) -> Result<FiniteDimAlgebra> {
        let n = self.dim();
        let (k, d) = (self.k, self.d);
        let group = self.ring.group();
        let alg = self.ring.algebra();
        let s = self.base.s();
        let v = self.v_poly.clone();
        let sv = self.base.mul(&s, &v);
        let shift = [[vec![Cyclo::one()], v.clone()], [s.clone(), sv]];
        // s^{e1}·σ_f^{e2}·s^E·V^F
        let mut central: BTreeMap<(usize, usize, usize, usize, usize), Poly> = BTreeMap::new();
        for f in 0..self.elements.len() {
            let mut sig_pow = vec![Cyclo::one()];
            for e2 in 0..d {
                let mut s_pow = vec![Cyclo::one()];
                for e1 in 0..d {
                    let base = self.base.mul(&s_pow, &sig_pow);
                    for (ee, row) in shift.iter().enumerate() {
                        for (ff, sh) in row.iter().enumerate() {
                            central.insert((f, e1, e2, ee, ff), self.base.mul(&base, sh));
                        }
                    }
                    s_pow = self.base.mul(&s_pow, &s);
                }
                sig_pow = self.base.mul(&sig_pow, &self.sigma[f]);
            }
        }
        let mut table = vec![vec![vec![]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            let (e1, a1, b1, f1) = self.coords(i);
            let g1 = self.elements[f1];
            let act = group.action(g1);
            for (j, cell) in row.iter_mut().enumerate() {
                let (e2, a2, b2, f2) = self.coords(j);
                let mut coef = group.omega_pow(act.eu * a2 as i64 + act.ev * b2 as i64);
                let (ap, bp) = if act.swap {
                    coef = &coef * &alg.q_pow((a2 * b2) as i64);
                    (b2, a2)
                } else {
                    (a2, b2)
                };
                coef = &coef * &alg.q_pow((b1 * ap) as i64);
                let (ua, vb) = (a1 + ap, b1 + bp);
                let fj = self.position[&group.multiply(g1, self.elements[f2])];
                let poly = &central[&(f1, e1, e2, ua / k, vb / k)];
                let mut entry: SparseVec = poly
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (self.index(e, ua % k, vb % k, fj), c * &coef))
                    .collect();
                entry.sort_by_key(|x| x.0);
                *cell = entry;
            }
        }
        let labels = (0..n).map(|i| self.label(i)).collect();
        let unit = vec![(self.index(0, 0, 0, self.position[&GroupElement::IDENTITY]), Cyclo::one())];
        let mut gens = vec![
            self.reduce(&SkewElement::u(&self.ring))?,
            self.reduce(&SkewElement::v(&self.ring))?,
        ];
        for g in group.generators() {
            gens.push(self.reduce(&SkewElement::group_element(&self.ring, g))?);
        }
        Ok(FiniteDimAlgebra::new(labels, table, unit)?.with_generators(gens))
    }
}

fn add(a: &[Cyclo], b: &[Cyclo]) -> Poly {
    let n = a.len().max(b.len());
    let z = Cyclo::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn sub(a: &[Cyclo], b: &[Cyclo]) -> Poly {
    add(a, &scale(&Cyclo::from_integer(-1), b))
}

fn scale(c: &Cyclo, p: &[Cyclo]) -> Poly {
    trim(p.iter().map(|x| x * c).collect())
}

/// `p(x)` in the quotient ring.
fn eval(ring: &QuotientRing, p: &[Cyclo], x: &[Cyclo]) -> Poly {
    let mut out: Poly = vec![];
    for c in p.iter().rev() {
        out = add(&ring.mul(&out, x), std::slice::from_ref(c));
    }
    out
}

fn eval_laurent(ring: &QuotientRing, p: &BTreeMap<i32, Cyclo>, x: &[Cyclo]) -> Result<Poly> {
    let mut out: Poly = vec![];
    for (e, c) in p {
        out = add(&out, &scale(c, &ring.pow(x, *e as i64)?));
    }
    Ok(out)
}

/// Whether `x` lies in `k[u^{±K}, v^{±K}]·e`.
fn in_base(x: &SkewElement, k: i32) -> bool {
    x.terms()
        .all(|(f, m, _)| f.is_identity() && m.a.rem_euclid(k) == 0 && m.b.rem_euclid(k) == 0)
}

/// The fiber `T/𝔪T` at a central point.
///
/// Every central generator `z` is compared with its value `λ`: generators
/// inside `k[u^{±K}, v^{±K}]` must reduce to `λ` exactly, the others
/// contribute `z − λ` to the ideal together with the recipe residuals.
pub fn build_fiber(ring: &Arc<SkewRing>, point: &CentralPoint, recipe: &FiberRecipe) -> Result<FiniteDimAlgebra> {
    let presentation = point.presentation();
    if !Arc::ptr_eq(presentation.ring(), ring) && **presentation.ring() != **ring {
        return Err(QksError::RingMismatch);
    }
    let builder = FiberBuilder::new(ring, recipe)?;
    let ambient = builder.ambient()?;
    let mut seeds = vec![];
    for (g, value) in presentation.generators().iter().zip(point.values()) {
        let shifted = g.element.sub(&SkewElement::scalar(ring, value.clone()))?;
        let r = builder.reduce(&shifted)?;
        if r.is_empty() {
            continue;
        }
        if in_base(&g.element, recipe.modulus as i32) {
            return Err(QksError::InconsistentRecipe(format!(
                "{} does not reduce to its value",
                g.name
            )));
        }
        seeds.push(r);
    }
    for x in &recipe.residual {
        seeds.push(builder.reduce(x)?);
    }
    let ideal = ambient.ideal_closure(&seeds);
    ambient.quotient(&ideal)
}
