use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{QksError, Result};
use crate::linalg::{Accumulator, Echelon, SparseVec};
use crate::ncalgebra::{apply_automorphism, AlgebraSpec, GroupSpec, Monomial, NCPoly, Terms};
use crate::scalar::CyclotomicNumber;
use crate::skewring::{invariants_by_degree, Window};

use super::catalog::{CaseSpec, Localization};
use super::report::{AuslanderReport, AuslanderRow};

type Cyclo = CyclotomicNumber;

/// `A_i` has basis `u^a v^{i−a}`, indexed by `a`.
fn mono(i: usize, a: usize) -> Monomial {
    Monomial::new(a as i32, (i - a) as i32)
}

struct Graded {
    algebra: Arc<AlgebraSpec>,
    group: GroupSpec,
    invariants: Vec<Vec<Terms>>,
    products: HashMap<(Monomial, Monomial), Terms>,
}

impl Graded {
    fn new(algebra: Arc<AlgebraSpec>, group: GroupSpec, top: usize) -> Result<Self> {
        let window = Window::for_algebra(&algebra, top as i32);
        let by_degree = invariants_by_degree(&algebra, &group, &window)?;
        let invariants = (0..=top)
            .map(|e| {
                by_degree
                    .get(&(e as i32))
                    .map(|v| v.iter().map(|p| p.terms().clone()).collect())
                    .unwrap_or_default()
            })
            .collect();
        Ok(Graded {
            algebra,
            group,
            invariants,
            products: HashMap::new(),
        })
    }

    fn mul(&mut self, x: Monomial, y: Monomial) -> &Terms {
        let alg = &self.algebra;
        self.products.entry((x, y)).or_insert_with(|| alg.mul_monomials(x, y))
    }

    /// `p·q` for homogeneous `p`.
    fn mul_terms(&mut self, p: &Terms, q: &Terms) -> Terms {
        let mut out = Terms::new();
        for (mp, cp) in p {
            for (mq, cq) in q {
                let c = cp * cq;
                for (m, cm) in self.mul(*mp, *mq).clone() {
                    let e = out.entry(m).or_insert_with(Cyclo::zero);
                    *e += &(&c * &cm);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Smallest `L` with `A_i = Σ_{i' ≤ L} A_{i'}·A^G_{i−i'}` for all `i ≤ top`.
    fn generator_degree(&mut self, top: usize) -> usize {
        'next: for l in 0..=top {
            for i in 0..=top {
                let mut span = Echelon::new();
                for ip in 0..=l.min(i) {
                    for a in 0..=ip {
                        for r in self.invariants[i - ip].clone() {
                            let x = Terms::from([(mono(ip, a), Cyclo::one())]);
                            let prod = self.mul_terms(&x, &r);
                            let v: SparseVec = prod.into_iter().map(|(m, c)| (m.a as usize, c)).collect();
                            span.insert(&v);
                        }
                    }
                }
                if span.rank() < i + 1 {
                    continue 'next;
                }
            }
            return l;
        }
        top
    }
}

/// Coordinates of degree-`j` maps defined on `A_0, …, A_{levels−1}`.
struct Unknowns {
    j: usize,
    offsets: Vec<usize>,
}

impl Unknowns {
    fn new(j: usize, levels: usize) -> Self {
        let mut offsets = vec![0];
        for i in 0..levels {
            offsets.push(offsets[i] + (i + 1) * (i + j + 1));
        }
        Unknowns { j, offsets }
    }

    fn levels(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Coefficient of `t_b ∈ A_{i+j}` in the image of `u^a v^{i−a}`.
    fn index(&self, i: usize, a: usize, b: usize) -> usize {
        self.offsets[i] + a * (i + self.j + 1) + b
    }
}

/// Linear conditions `φ(x·r) = φ(x)·r` on a degree-`j` map, for
/// `x ∈ A_i`, `r ∈ A^G_e`, `i + e < levels`.
fn hom_constraints(g: &mut Graded, unk: &Unknowns) -> Vec<SparseVec> {
    let j = unk.j;
    let mut rows = vec![];
    for i in 0..unk.levels() {
        for e in 1..unk.levels() - i {
            for r in g.invariants[e].clone() {
                for a in 0..=i {
                    let xr = g.mul_terms(&Terms::from([(mono(i, a), Cyclo::one())]), &r);
                    let mut per_target: Vec<Accumulator> = (0..=i + e + j).map(|_| Accumulator::new()).collect();
                    for (m, c) in &xr {
                        for (b, acc) in per_target.iter_mut().enumerate() {
                            acc.add(unk.index(i + e, m.a as usize, b), c);
                        }
                    }
                    for bp in 0..=i + j {
                        let tr = g.mul_terms(&Terms::from([(mono(i + j, bp), Cyclo::one())]), &r);
                        for (m, c) in &tr {
                            per_target[m.a as usize].add(unk.index(i, a, bp), &-c);
                        }
                    }
                    for acc in per_target {
                        let row = acc.finish();
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    rows
}

/// Dimension of the restriction to `A_{≤l}` of degree-`j` maps on the
/// truncation `A_{≤top}`.
fn hom_dimension(g: &mut Graded, j: usize, top: usize, l: usize) -> usize {
    let unk = Unknowns::new(j, top - j + 1);
    let mut ech = Echelon::new();
    for row in hom_constraints(g, &unk) {
        ech.insert(&row);
    }
    let base = ech.rank();
    for i in 0..=l.min(unk.levels() - 1) {
        for idx in unk.offsets[i]..unk.offsets[i + 1] {
            ech.insert(&vec![(idx, Cyclo::one())]);
        }
    }
    ech.rank() - base
}

/// Whether `m·f ↦ (x ↦ m·(f·x))` is injective on `(A#G)_j`, seen on `A_{≤l}`.
fn natural_map_injective(g: &mut Graded, j: usize, l: usize) -> Result<bool> {
    let unk = Unknowns::new(j, l + 1);
    let mut ech = Echelon::new();
    for f in g.group.elements() {
        for c in 0..=j {
            let m = Terms::from([(mono(j, c), Cyclo::one())]);
            let mut acc = Accumulator::new();
            for i in 0..=l {
                for a in 0..=i {
                    let x = NCPoly::monomial(&g.algebra, mono(i, a).a, mono(i, a).b, Cyclo::one())?;
                    let fx = apply_automorphism(&g.group, f, &x)?.terms().clone();
                    for (t, coef) in g.mul_terms(&m, &fx) {
                        acc.add(unk.index(i, a, t.a as usize), &coef);
                    }
                }
            }
            ech.insert(&acc.finish());
        }
    }
    Ok(ech.rank() == g.group.order() * (j + 1))
}

/// Compares `dim (A#G)_j` with the stable truncated `dim Hom_{A^G}(A, A)_j`
/// for `j ≤ d`, at truncations `d + guard` and `d + guard + 2`.
pub fn auslander_check(case: &CaseSpec, d: usize, guard: usize) -> Result<AuslanderReport> {
    if guard == 0 {
        return Err(QksError::Parse("guard must be at least 1".into()));
    }
    let unlocalized;
    let case = if case.params.localization == Localization::None {
        case
    } else {
        unlocalized = CaseSpec::new(case.id, case.params.clone().with_localization(Localization::None))?;
        &unlocalized
    };
    let algebra = Arc::clone(case.ring.algebra());
    let group = case.ring.group().clone();
    let top_small = d + guard;
    let top_large = d + guard + 2;
    let mut g = Graded::new(algebra, group, top_large)?;
    let l = g.generator_degree(top_large);
    let order = g.group.order();
    let mut rows = vec![];
    for j in 0..=d {
        let small = hom_dimension(&mut g, j, top_small, l);
        let large = hom_dimension(&mut g, j, top_large, l);
        let stable = small == large;
        rows.push(AuslanderRow {
            degree: j,
            skew_dim: order * (j + 1),
            hom_dim: stable.then_some(large),
            stable,
            injective: natural_map_injective(&mut g, j, l)?,
        });
    }
    let verdict = if rows.iter().any(|r| !r.stable) {
        "inconclusive: truncation unstable".to_string()
    } else if rows.iter().all(|r| r.hom_dim == Some(r.skew_dim) && r.injective) {
        "agree".to_string()
    } else {
        "disagree".to_string()
    };
    Ok(AuslanderReport {
        case: case.id,
        params: case.params.clone(),
        degree: d,
        guard,
        module_generator_degree: l,
        pass: verdict == "agree",
        rows,
        verdict,
    })
}
