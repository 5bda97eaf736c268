use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::center::{center_by_degree, Indexer, Window};
use super::element::{SkewElement, SkewRing};
use crate::error::{QksError, Result};
use crate::linalg::Echelon;
use crate::ncalgebra::{apply_automorphism, GroupElement, GroupSpec, NCPoly};
use crate::scalar::CyclotomicNumber;

/// A commutative Laurent polynomial in named central generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, CyclotomicNumber>,
}

impl GenPoly {
    pub fn zero(nvars: usize) -> Self {
        GenPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CyclotomicNumber) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The `i`-th generator.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, CyclotomicNumber::one());
        p
    }

    fn add_term(&mut self, e: Vec<i32>, c: CyclotomicNumber) {
        let entry = self.terms.entry(e.clone()).or_insert_with(CyclotomicNumber::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, CyclotomicNumber> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CyclotomicNumber::from_integer(-1)))
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, CyclotomicNumber::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at a point; negative exponents invert.
    pub fn evaluate(&self, values: &[CyclotomicNumber]) -> Result<CyclotomicNumber> {
        let mut acc = CyclotomicNumber::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in values.iter().zip(e) {
                if *k != 0 {
                    t = &t * &x.pow(*k as i64)?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes ring elements for the generators.
    pub fn evaluate_in(&self, ring: &Arc<SkewRing>, gens: &[SkewElement]) -> Result<SkewElement> {
        let mut acc = SkewElement::zero(ring);
        for (e, c) in &self.terms {
            let mut t = SkewElement::scalar(ring, c.clone());
            for (x, k) in gens.iter().zip(e) {
                if *k != 0 {
                    t = t.mul(&x.pow(*k as i64)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Renders with the given generator names.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = vec![];
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = names
                .iter()
                .zip(e)
                .filter(|(_, k)| **k != 0)
                .map(|(n, k)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let cs = c.to_string();
            let coef = if c.to_rational().is_some() { cs } else { format!("({cs})") };
            parts.push(match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{coef}*{}", mono.join("*")),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// A named central element; `invertible` marks units of the center.
#[derive(Clone, Debug)]
pub struct CentralGenerator {
    pub name: String,
    pub element: SkewElement,
    pub invertible: bool,
}

/// A claimed presentation of a center by generators, relations and
/// nonvanishing conditions.
#[derive(Clone, Debug)]
pub struct CentralPresentation {
    ring: Arc<SkewRing>,
    generators: Vec<CentralGenerator>,
    relations: Vec<GenPoly>,
    localized_at: Vec<GenPoly>,
}

impl CentralPresentation {
    pub fn new(
        ring: &Arc<SkewRing>,
        generators: Vec<CentralGenerator>,
        relations: Vec<GenPoly>,
        localized_at: Vec<GenPoly>,
    ) -> Result<Self> {
        for g in &generators {
            if !Arc::ptr_eq(g.element.ring(), ring) && **g.element.ring() != **ring {
                return Err(QksError::RingMismatch);
            }
        }
        Ok(CentralPresentation {
            ring: Arc::clone(ring),
            generators,
            relations,
            localized_at,
        })
    }

    pub fn ring(&self) -> &Arc<SkewRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[CentralGenerator] {
        &self.generators
    }

    pub fn relations(&self) -> &[GenPoly] {
        &self.relations
    }

    pub fn localized_at(&self) -> &[GenPoly] {
        &self.localized_at
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn var(&self, name: &str) -> Option<GenPoly> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| GenPoly::var(self.nvars(), i))
    }

    /// Checks centrality of every generator and that every relation vanishes.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if !g.element.is_central() {
                return Err(QksError::NotCentral(format!("{} = {}", g.name, g.element)));
            }
            if g.invertible {
                g.element.inverse()?;
            }
        }
        let elems: Vec<SkewElement> = self.generators.iter().map(|g| g.element.clone()).collect();
        for r in &self.relations {
            if !r.evaluate_in(&self.ring, &elems)?.is_zero() {
                return Err(QksError::RelationFailed(r.display(&self.names())));
            }
        }
        Ok(())
    }

    /// The same presentation without the named generator.
    pub fn without(&self, name: &str) -> Self {
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| self.generators[*i].name != name).collect();
        let project = |p: &GenPoly| -> Option<GenPoly> {
            let mut out = GenPoly::zero(keep.len());
            for (e, c) in p.terms() {
                if (0..e.len()).any(|i| e[i] != 0 && !keep.contains(&i)) {
                    return None;
                }
                out.add_term(keep.iter().map(|i| e[*i]).collect(), c.clone());
            }
            Some(out)
        };
        CentralPresentation {
            ring: Arc::clone(&self.ring),
            generators: keep.iter().map(|i| self.generators[*i].clone()).collect(),
            relations: self.relations.iter().filter_map(project).collect(),
            localized_at: self.localized_at.iter().filter_map(project).collect(),
        }
    }
}

/// A maximal ideal of a presented center, given by generator values.
#[derive(Clone, Debug)]
pub struct CentralPoint {
    presentation: Arc<CentralPresentation>,
    values: Vec<CyclotomicNumber>,
}

impl CentralPoint {
    /// Fails unless the values satisfy every relation and nonvanishing condition.
    pub fn new(presentation: &Arc<CentralPresentation>, values: Vec<CyclotomicNumber>) -> Result<Self> {
        let names = presentation.names();
        if values.len() != names.len() {
            return Err(QksError::InadmissiblePoint(format!(
                "expected {} values, got {}",
                names.len(),
                values.len()
            )));
        }
        for (g, x) in presentation.generators().iter().zip(&values) {
            if g.invertible && x.is_zero() {
                return Err(QksError::InadmissiblePoint(format!("{} must be nonzero", g.name)));
            }
        }
        for r in presentation.relations() {
            if !r.evaluate(&values)?.is_zero() {
                return Err(QksError::InadmissiblePoint(format!(
                    "relation {} = 0 fails",
                    r.display(&names)
                )));
            }
        }
        for l in presentation.localized_at() {
            if l.evaluate(&values)?.is_zero() {
                return Err(QksError::InadmissiblePoint(format!(
                    "{} must be nonzero",
                    l.display(&names)
                )));
            }
        }
        Ok(CentralPoint {
            presentation: Arc::clone(presentation),
            values,
        })
    }

    /// Builds a point from `name = value` pairs.
    pub fn from_named(presentation: &Arc<CentralPresentation>, named: &[(String, CyclotomicNumber)]) -> Result<Self> {
        let mut values = vec![];
        for name in presentation.names() {
            let v = named
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| QksError::InadmissiblePoint(format!("missing value for {name}")))?;
            values.push(v);
        }
        for (n, _) in named {
            if !presentation.names().contains(n) {
                return Err(QksError::InadmissiblePoint(format!("unknown generator {n}")));
            }
        }
        Self::new(presentation, values)
    }

    pub fn presentation(&self) -> &Arc<CentralPresentation> {
        &self.presentation
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn value(&self, name: &str) -> Option<&CyclotomicNumber> {
        self.presentation
            .names()
            .iter()
            .position(|n| n == name)
            .map(|i| &self.values[i])
    }
}

type Range = (i32, i32);

fn exponent_box(x: &SkewElement) -> (Range, Range, Range) {
    let mut a = (i32::MAX, i32::MIN);
    let mut b = (i32::MAX, i32::MIN);
    let mut t = (i32::MAX, i32::MIN);
    for (_, m, _) in x.terms() {
        a = (a.0.min(m.a), a.1.max(m.a));
        b = (b.0.min(m.b), b.1.max(m.b));
        t = (t.0.min(m.degree()), t.1.max(m.degree()));
    }
    (a, b, t)
}

fn scaled(e: i32, r: Range) -> Range {
    if e >= 0 {
        (e * r.0, e * r.1)
    } else {
        (e * r.1, e * r.0)
    }
}

/// Span of products of generator powers lying in the window, by degree.
pub fn generator_span_by_degree(
    presentation: &CentralPresentation,
    window: &Window,
) -> Result<BTreeMap<i32, Vec<SkewElement>>> {
    let ring = presentation.ring();
    let gens = presentation.generators();
    let bound = 2 * window.d + 2;
    let boxes: Vec<_> = gens.iter().map(|g| exponent_box(&g.element)).collect();
    let mut ranges = vec![];
    for g in gens {
        let lo = if g.invertible { -bound } else { 0 };
        ranges.push(lo..=bound);
    }
    let mut exps: Vec<i32> = ranges.iter().map(|r| *r.start()).collect();
    let mut combos = vec![];
    loop {
        let mut a = (0i32, 0i32);
        let mut b = (0i32, 0i32);
        let mut t = (0i32, 0i32);
        for (e, (ba, bb, bt)) in exps.iter().zip(&boxes) {
            let (sa, sb, st) = (scaled(*e, *ba), scaled(*e, *bb), scaled(*e, *bt));
            a = (a.0 + sa.0, a.1 + sa.1);
            b = (b.0 + sb.0, b.1 + sb.1);
            t = (t.0 + st.0, t.1 + st.1);
        }
        if window.contains_box(a, b, t) {
            combos.push(exps.clone());
        }
        // odometer
        let mut k = 0;
        loop {
            if k == exps.len() {
                return finish_span(ring, gens, combos, window);
            }
            if exps[k] < *ranges[k].end() {
                exps[k] += 1;
                break;
            }
            exps[k] = *ranges[k].start();
            k += 1;
        }
    }
}

fn finish_span(
    ring: &Arc<SkewRing>,
    gens: &[CentralGenerator],
    combos: Vec<Vec<i32>>,
    window: &Window,
) -> Result<BTreeMap<i32, Vec<SkewElement>>> {
    let mut powers: HashMap<(usize, i32), SkewElement> = HashMap::new();
    let mut out: BTreeMap<i32, Vec<SkewElement>> = BTreeMap::new();
    for exps in combos {
        let mut x = SkewElement::one(ring);
        for (i, e) in exps.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let p = match powers.entry((i, *e)) {
                Entry::Occupied(o) => o.into_mut(),
                Entry::Vacant(v) => v.insert(gens[i].element.pow(*e as i64)?),
            };
            x = x.mul(p)?;
        }
        if x.is_zero() || !x.terms().all(|(_, m, _)| window.contains(m)) {
            continue;
        }
        let ds = x.degrees();
        if ds.len() != 1 {
            return Err(QksError::Unsupported("generators must be homogeneous".into()));
        }
        out.entry(ds[0]).or_default().push(x);
    }
    Ok(out)
}

/// Whether the claimed generators span the windowed center in every degree.
/// Errors when a generator is not central or a relation does not vanish.
pub fn verify_generating_set(claimed: &CentralPresentation, d: i32) -> Result<bool> {
    claimed.validate()?;
    let ring = claimed.ring();
    let window = Window::for_algebra(ring.algebra(), d);
    let center = center_by_degree(ring, &window)?;
    let products = generator_span_by_degree(claimed, &window)?;
    Ok(spans_agree(&center, &products))
}

pub(crate) fn spans_agree(
    target: &BTreeMap<i32, Vec<SkewElement>>,
    products: &BTreeMap<i32, Vec<SkewElement>>,
) -> bool {
    let degrees: std::collections::BTreeSet<i32> = target.keys().chain(products.keys()).copied().collect();
    for t in degrees {
        let mut idx = Indexer::new();
        let mut et = Echelon::new();
        for x in target.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
            et.insert(&idx.coords(x));
        }
        let mut ep = Echelon::new();
        for x in products.get(&t).map(Vec::as_slice).unwrap_or(&[]) {
            let c = idx.coords(x);
            if !et.contains(&c) {
                return false;
            }
            ep.insert(&c);
        }
        if ep.rank() != et.rank() {
            return false;
        }
    }
    true
}

/// How `f` permutes the generators of a presentation of `Z(A)`:
/// `f·z_i = λ_i z_{π(i)}`.
pub fn generator_permutation(
    presentation: &CentralPresentation,
    group: &GroupSpec,
    f: GroupElement,
) -> Result<Vec<(CyclotomicNumber, usize)>> {
    let gens: Vec<NCPoly> = presentation
        .generators()
        .iter()
        .map(|g| g.element.component(GroupElement::IDENTITY))
        .collect();
    let mut out = vec![];
    for (i, z) in gens.iter().enumerate() {
        let image = apply_automorphism(group, f, z)?;
        let found = gens.iter().enumerate().find_map(|(j, w)| {
            let (m, cw) = w.terms().iter().next()?;
            let ci = image.terms().get(m)?;
            let lambda = ci.checked_div(cw).ok()?;
            (w.scale(&lambda) == image).then_some((lambda, j))
        });
        match found {
            Some(p) => out.push(p),
            None => {
                return Err(QksError::NonMonomialAction(format!(
                    "{f} maps {} to {image}",
                    presentation.generators()[i].name
                )))
            }
        }
    }
    Ok(out)
}

/// Group elements fixing a point of `Z(A)`.
pub fn stabilizer_of_point(point: &CentralPoint, group: &GroupSpec) -> Result<Vec<GroupElement>> {
    let mut out = vec![];
    for f in group.elements() {
        let perm = generator_permutation(point.presentation(), group, f)?;
        let fixes = perm
            .iter()
            .enumerate()
            .all(|(i, (lambda, j))| lambda * &point.values()[*j] == point.values()[i]);
        if fixes {
            out.push(f);
        }
    }
    Ok(out)
}

impl fmt::Display for CentralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .presentation
            .names()
            .iter()
            .zip(&self.values)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalgebra::AlgebraSpec;

    fn k_uv_s2() -> (Arc<SkewRing>, Arc<CentralPresentation>) {
        let ring = SkewRing::new(AlgebraSpec::commutative(), GroupSpec::sym2()).unwrap();
        let u = SkewElement::u(&ring);
        let v = SkewElement::v(&ring);
        let gens = vec![
            CentralGenerator {
                name: "x".into(),
                element: u.add(&v).unwrap(),
                invertible: false,
            },
            CentralGenerator {
                name: "y".into(),
                element: u.mul(&v).unwrap(),
                invertible: false,
            },
        ];
        let p = CentralPresentation::new(&ring, gens, vec![], vec![]).unwrap();
        (ring, Arc::new(p))
    }

    #[test]
    fn symmetric_functions_generate() {
        let (_, p) = k_uv_s2();
        assert!(verify_generating_set(&p, 6).unwrap());
        assert!(!verify_generating_set(&p.without("y"), 6).unwrap());
    }

    #[test]
    fn failing_relation_is_reported() {
        let (ring, p) = k_uv_s2();
        let bogus = p.var("x").unwrap().sub(&p.var("y").unwrap());
        let q = CentralPresentation::new(&ring, p.generators().to_vec(), vec![bogus], vec![]).unwrap();
        assert!(matches!(verify_generating_set(&q, 3), Err(QksError::RelationFailed(_))));
    }

    #[test]
    fn stabilizers_on_the_plane() {
        let plain = SkewRing::new(AlgebraSpec::commutative(), GroupSpec::trivial()).unwrap();
        let gens = vec![
            CentralGenerator {
                name: "u".into(),
                element: SkewElement::u(&plain),
                invertible: false,
            },
            CentralGenerator {
                name: "v".into(),
                element: SkewElement::v(&plain),
                invertible: false,
            },
        ];
        let p = Arc::new(CentralPresentation::new(&plain, gens, vec![], vec![]).unwrap());
        let s2 = GroupSpec::sym2();
        let c = |n| CyclotomicNumber::from_integer(n);
        let generic = CentralPoint::new(&p, vec![c(1), c(2)]).unwrap();
        assert_eq!(stabilizer_of_point(&generic, &s2).unwrap(), vec![GroupElement::IDENTITY]);
        let diagonal = CentralPoint::new(&p, vec![c(3), c(3)]).unwrap();
        assert_eq!(stabilizer_of_point(&diagonal, &s2).unwrap().len(), 2);
    }
}
