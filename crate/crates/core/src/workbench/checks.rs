use std::collections::BTreeMap;

use crate::error::{QksError, Result};
use crate::fiber::FiniteDimAlgebra;
use crate::ncalgebra::{apply_automorphism, NCPoly};
use crate::scalar::CyclotomicNumber;
use crate::series::{as_counts, cyclic_closed_form, dihedral_closed_form, invariant_counts, molien_series};
use crate::skewring::{
    center_by_degree, generator_span_by_degree, invariants_by_degree, span_dim, CentralPoint, Window,
};

use super::catalog::{CaseId, CaseSpec};
use super::report::{named_values, FiberReport, GradedReport, PointRecord, SeriesReport};

type Cyclo = CyclotomicNumber;

/// The windowed center of `A#G` against the span of products of the
/// catalogued generators, degree by degree.
pub fn center_check(case: &CaseSpec, d: i32) -> Result<GradedReport> {
    let pres = case
        .presentation
        .as_ref()
        .ok_or_else(|| QksError::Unsupported(format!("case {} has no presented center", case.label())))?;
    pres.validate()?;
    let window = Window::for_algebra(case.ring.algebra(), d);
    let center = center_by_degree(&case.ring, &window)?;
    let products = generator_span_by_degree(pres, &window)?;
    let dims = |m: &BTreeMap<i32, Vec<_>>| -> BTreeMap<i32, usize> {
        m.iter()
            .map(|(t, xs)| (*t, span_dim(xs)))
            .filter(|(_, n)| *n > 0)
            .collect()
    };
    let names = pres.names();
    Ok(GradedReport {
        case: case.id,
        params: case.params.clone(),
        object: "center of A#G".into(),
        degree: d,
        generators: pres
            .generators()
            .iter()
            .map(|g| format!("{} = {}", g.name, g.element))
            .collect(),
        relations: pres.relations().iter().map(|r| format!("{} = 0", r.display(&names))).collect(),
        computed: dims(&center),
        reference: "from generators".into(),
        expected: dims(&products),
        pass: crate::skewring::spans_agree(&center, &products),
    })
}

/// `A^G` by fixed-space computation against the character average
/// `(1/|G|)·Σ_f tr(f | A_t)`, degree by degree.
pub fn invariants_check(case: &CaseSpec, d: i32) -> Result<GradedReport> {
    let algebra = case.ring.algebra();
    let group = case.ring.group();
    let window = Window::for_algebra(algebra, d);
    let fixed = invariants_by_degree(algebra, group, &window)?;
    let mut computed = BTreeMap::new();
    let mut expected = BTreeMap::new();
    let order = Cyclo::from_integer(group.order() as i64);
    for t in window.degrees() {
        if let Some(xs) = fixed.get(&t) {
            computed.insert(t, xs.len());
        }
        let mut trace = Cyclo::zero();
        for m in window.monomials(t) {
            let x = NCPoly::monomial(algebra, m.a, m.b, Cyclo::one())?;
            for f in group.elements() {
                if let Some(c) = apply_automorphism(group, f, &x)?.terms().get(&m) {
                    trace += c;
                }
            }
        }
        let avg = trace.checked_div(&order)?;
        let n = as_counts(std::slice::from_ref(&avg))
            .and_then(|v| v.first().copied())
            .ok_or_else(|| QksError::Unsupported(format!("character average {avg} is not a count")))?;
        if n > 0 {
            expected.insert(t, n as usize);
        }
    }
    Ok(GradedReport {
        case: case.id,
        params: case.params.clone(),
        object: "invariant ring A^G".into(),
        degree: d,
        generators: vec![],
        relations: vec![],
        pass: computed == expected,
        computed,
        reference: "character average".into(),
        expected,
    })
}

/// Molien series of the catalog representation against brute-force
/// invariant counts and, where catalogued, a closed form.
pub fn series_check(case: &CaseSpec, m: u32, d: usize) -> Result<SeriesReport> {
    if m == 0 {
        return Err(QksError::InvalidGroup("m must be positive".into()));
    }
    let mats = case.molien_matrices(m);
    let f = molien_series(&mats)?;
    let counts = invariant_counts(&mats, d)?;
    let closed = match case.id {
        CaseId::I => Some(cyclic_closed_form(m as usize)),
        CaseId::Iii => Some(dihedral_closed_form(m as usize)),
        _ => None,
    };
    let expansion = f.expand(d);
    let matches_counts = expansion
        .iter()
        .zip(&counts)
        .all(|(c, n)| *c == Cyclo::from_integer(*n as i64));
    let matches_closed_form = closed.as_ref().map(|c| c.equals(&f));
    Ok(SeriesReport {
        case: case.id,
        m,
        degree: d,
        molien: f.to_string(),
        closed_form: closed.map(|c| c.to_string()),
        matches_closed_form,
        expansion: expansion.iter().map(|c| c.to_string()).collect(),
        counts,
        matches_counts,
        pass: matches_counts && matches_closed_form.unwrap_or(true),
    })
}

/// Structure of the fiber at one point.
pub fn fiber_report(case: &CaseSpec, point: &CentralPoint) -> Result<FiberReport> {
    let fiber: FiniteDimAlgebra = case.fiber(point)?;
    let cert = fiber.matrix_algebra_certificate();
    let semisimple = fiber.semisimple_quotient()?;
    Ok(FiberReport {
        case: case.id,
        params: case.params.clone(),
        conductor: case.conductor,
        point: PointRecord::new(named_values(point, case.conductor), fiber.dim(), &cert),
        trace_form_rank: fiber.trace_form_rank(),
        radical_dim: fiber.jacobson_radical_dim(),
        center_dim: fiber.center_dimension(),
        semisimple_dim: semisimple.dim(),
        semisimple_center_dim: semisimple.center_dimension(),
    })
}
