use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::element::{SkewElement, SkewRing};
use crate::error::Result;
use crate::linalg::{nullspace, Accumulator, Echelon, SparseVec};
use crate::ncalgebra::{apply_automorphism, AlgebraSpec, GroupElement, GroupSpec, Monomial, NCPoly};
use crate::scalar::CyclotomicNumber;

/// A finite set of PBW monomials grouped by total degree.
///
/// Without inverted generators this is every `u^a v^b` with `a + b ≤ d`;
/// otherwise it is the box of exponents in `[-d, d]` (or `[0, d]` for a
/// generator that is not inverted).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub d: i32,
    lo_a: i32,
    lo_b: i32,
    total: bool,
}

impl Window {
    pub fn for_algebra(algebra: &AlgebraSpec, d: i32) -> Self {
        let total = !algebra.invert_u() && !algebra.invert_v();
        Window {
            d,
            lo_a: if algebra.invert_u() { -d } else { 0 },
            lo_b: if algebra.invert_v() { -d } else { 0 },
            total,
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        if self.total {
            0..=self.d
        } else {
            (self.lo_a + self.lo_b)..=(2 * self.d)
        }
    }

    pub fn monomials(&self, t: i32) -> Vec<Monomial> {
        let mut out = vec![];
        for a in self.lo_a..=self.d {
            let b = t - a;
            if b >= self.lo_b && b <= self.d && (!self.total || t <= self.d) {
                out.push(Monomial::new(a, b));
            }
        }
        out
    }

    pub fn contains(&self, m: Monomial) -> bool {
        if self.total {
            m.a >= 0 && m.b >= 0 && m.degree() <= self.d
        } else {
            m.a >= self.lo_a && m.a <= self.d && m.b >= self.lo_b && m.b <= self.d
        }
    }

    /// Whether monomials with exponents in `[a0, a1] × [b0, b1]` and total
    /// degree in `[t0, t1]` all lie inside the window.
    pub fn contains_box(&self, a: (i32, i32), b: (i32, i32), t: (i32, i32)) -> bool {
        if self.total {
            a.0 >= 0 && b.0 >= 0 && t.1 <= self.d
        } else {
            a.0 >= self.lo_a && a.1 <= self.d && b.0 >= self.lo_b && b.1 <= self.d
        }
    }
}

/// Assigns coordinates to `(group element, monomial)` pairs on demand.
#[derive(Default)]
pub struct Indexer {
    map: HashMap<(GroupElement, Monomial), usize>,
}

impl Indexer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, f: GroupElement, m: Monomial) -> usize {
        let next = self.map.len();
        *self.map.entry((f, m)).or_insert(next)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Coordinates of a denominator-free element.
    pub fn coords(&mut self, x: &SkewElement) -> SparseVec {
        let mut acc = Accumulator::new();
        for (f, m, c) in x.terms() {
            let i = self.index(f, m);
            acc.add(i, c);
        }
        acc.finish()
    }
}

fn combine(ring: &Arc<SkewRing>, basis: &[(GroupElement, Monomial)], v: &SparseVec) -> Result<SkewElement> {
    let mut x = SkewElement::zero(ring);
    for (col, c) in v {
        let (f, m) = basis[*col];
        x = x.add(&SkewElement::monomial(ring, m.a, m.b, f, c.clone())?)?;
    }
    Ok(x)
}

/// Central elements of `A#G` supported in the window, by degree.
pub fn center_by_degree(ring: &Arc<SkewRing>, window: &Window) -> Result<BTreeMap<i32, Vec<SkewElement>>> {
    let mut tests = vec![SkewElement::u(ring), SkewElement::v(ring)];
    for f in ring.group().generators() {
        tests.push(SkewElement::group_element(ring, f));
    }
    let elements = ring.group().elements();
    let mut out = BTreeMap::new();
    for t in window.degrees() {
        let mut basis = vec![];
        for &f in &elements {
            for m in window.monomials(t) {
                basis.push((f, m));
            }
        }
        if basis.is_empty() {
            continue;
        }
        let mut rows: HashMap<(usize, GroupElement, Monomial), SparseVec> = HashMap::new();
        for (col, (f, m)) in basis.iter().enumerate() {
            let x = SkewElement::monomial(ring, m.a, m.b, *f, CyclotomicNumber::one())?;
            for (ti, test) in tests.iter().enumerate() {
                let c = x.commutator(test)?;
                for (g, mm, coef) in c.terms() {
                    rows.entry((ti, g, mm)).or_default().push((col, coef.clone()));
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort();
        let matrix: Vec<SparseVec> = keys.iter().map(|k| rows[k].clone()).collect();
        let kernel = nullspace(&matrix, basis.len());
        let mut elems = Vec::with_capacity(kernel.len());
        for v in &kernel {
            elems.push(combine(ring, &basis, v)?);
        }
        if !elems.is_empty() {
            out.insert(t, elems);
        }
    }
    Ok(out)
}

/// Basis of the central elements of `A#G` in the window of size `d`.
pub fn center_basis(ring: &Arc<SkewRing>, d: i32) -> Result<Vec<SkewElement>> {
    let window = Window::for_algebra(ring.algebra(), d);
    Ok(center_by_degree(ring, &window)?.into_values().flatten().collect())
}

/// Fixed points of `G` on `A` inside the window, by degree.
pub fn invariants_by_degree(
    algebra: &Arc<AlgebraSpec>,
    group: &GroupSpec,
    window: &Window,
) -> Result<BTreeMap<i32, Vec<NCPoly>>> {
    let mut out = BTreeMap::new();
    for t in window.degrees() {
        let basis: Vec<NCPoly> = window
            .monomials(t)
            .into_iter()
            .map(|m| NCPoly::monomial(algebra, m.a, m.b, CyclotomicNumber::one()))
            .collect::<Result<_>>()?;
        let fixed = fixed_subspace(group, &basis)?;
        if !fixed.is_empty() {
            out.insert(t, fixed);
        }
    }
    Ok(out)
}

/// Basis of `A^G` in each degree up to `d`.
pub fn invariant_basis(algebra: &Arc<AlgebraSpec>, group: &GroupSpec, d: i32) -> Result<Vec<NCPoly>> {
    let window = Window::for_algebra(algebra, d);
    Ok(invariants_by_degree(algebra, group, &window)?
        .into_values()
        .flatten()
        .collect())
}

/// The subspace of `span(basis)` fixed by every group element.
pub fn fixed_subspace(group: &GroupSpec, basis: &[NCPoly]) -> Result<Vec<NCPoly>> {
    if basis.is_empty() {
        return Ok(vec![]);
    }
    let algebra = Arc::clone(basis[0].algebra());
    let mut rows: BTreeMap<(usize, Monomial), SparseVec> = BTreeMap::new();
    for (col, b) in basis.iter().enumerate() {
        for (gi, f) in group.generators().into_iter().enumerate() {
            let diff = apply_automorphism(group, f, b)?.sub(b)?;
            for (m, c) in diff.terms() {
                rows.entry((gi, *m)).or_default().push((col, c.clone()));
            }
        }
    }
    let matrix: Vec<SparseVec> = rows.into_values().collect();
    let kernel = nullspace(&matrix, basis.len());
    let mut out = vec![];
    for v in kernel {
        let mut x = NCPoly::zero(&algebra);
        for (i, c) in v {
            x = x.add(&basis[i].scale(&c))?;
        }
        out.push(x);
    }
    Ok(out)
}

/// `Z(A)^G`, computed as the fixed part of the center of `A` alone, embedded
/// in `A·e ⊂ A#G`.
pub fn invariant_center_by_degree(ring: &Arc<SkewRing>, window: &Window) -> Result<BTreeMap<i32, Vec<SkewElement>>> {
    let plain = SkewRing::new(Arc::clone(ring.algebra()), GroupSpec::trivial())?;
    let za = center_by_degree(&plain, window)?;
    let mut out = BTreeMap::new();
    for (t, elems) in za {
        let polys: Vec<NCPoly> = elems.iter().map(|x| x.component(GroupElement::IDENTITY)).collect();
        let fixed = fixed_subspace(ring.group(), &polys)?;
        let lifted: Vec<SkewElement> = fixed
            .into_iter()
            .map(|p| SkewElement::from_poly(ring, p, GroupElement::IDENTITY))
            .collect::<Result<_>>()?;
        if !lifted.is_empty() {
            out.insert(t, lifted);
        }
    }
    Ok(out)
}

/// Whether two lists of elements span the same space.
pub fn same_span(x: &[SkewElement], y: &[SkewElement]) -> bool {
    let mut idx = Indexer::new();
    let cx: Vec<SparseVec> = x.iter().map(|e| idx.coords(e)).collect();
    let cy: Vec<SparseVec> = y.iter().map(|e| idx.coords(e)).collect();
    let mut ex = Echelon::new();
    for v in &cx {
        ex.insert(v);
    }
    let mut ey = Echelon::new();
    for v in &cy {
        ey.insert(v);
    }
    ex.rank() == ey.rank() && cy.iter().all(|v| ex.contains(v))
}

/// Dimension of the span of a list of elements.
pub fn span_dim(x: &[SkewElement]) -> usize {
    let mut idx = Indexer::new();
    let mut e = Echelon::new();
    for v in x {
        e.insert(&idx.coords(v));
    }
    e.rank()
}

/// Compares two degree-indexed families of elements degree by degree.
pub fn same_graded_span(x: &BTreeMap<i32, Vec<SkewElement>>, y: &BTreeMap<i32, Vec<SkewElement>>) -> bool {
    let degrees: std::collections::BTreeSet<i32> = x.keys().chain(y.keys()).copied().collect();
    degrees.into_iter().all(|t| {
        let empty = vec![];
        same_span(x.get(&t).unwrap_or(&empty), y.get(&t).unwrap_or(&empty))
    })
}
