use std::time::Instant;

use crate::error::{QksError, Result};
use crate::fiber::Certificate;
use crate::scalar::CyclotomicNumber;
use crate::skewring::{stabilizer_of_point, CentralPoint};

use super::catalog::{CaseId, CaseSpec};
use super::report::{
    named_values, FreenessRecord, FreenessReport, PointRecord, RankRecord, RankReport, ScanReport, Timings,
};
use super::sample::{PointSampler, RETRY_BUDGET};

type Cyclo = CyclotomicNumber;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub samples: usize,
    pub seed: u64,
    /// Also visit points of `Z(A)` fixed by a reflection, when admissible.
    pub include_fixed: bool,
    pub timings: bool,
}

impl ScanOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        ScanOptions {
            samples,
            seed,
            include_fixed: false,
            timings: false,
        }
    }

    pub fn with_fixed(mut self) -> Self {
        self.include_fixed = true;
        self
    }

    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }
}

fn admissible(case: &CaseSpec, lift: &(Cyclo, Cyclo), need_base: bool) -> Result<()> {
    case.point_from_lift(&lift.0, &lift.1)?;
    if need_base {
        case.base_point_from_lift(&lift.0, &lift.1)?;
    }
    Ok(())
}

/// Distinct admissible lifts, drawn in a seed-determined order.
fn sample_lifts(case: &CaseSpec, opts: &ScanOptions, need_base: bool) -> Result<Vec<(Cyclo, Cyclo)>> {
    let mut sampler = PointSampler::new(opts.seed, case.conductor);
    let mut out: Vec<(Cyclo, Cyclo)> = vec![];
    for _ in 0..opts.samples {
        let mut last = None;
        let mut found = false;
        for _ in 0..RETRY_BUDGET {
            let lift = sampler.pair();
            if out.contains(&lift) {
                continue;
            }
            match admissible(case, &lift, need_base) {
                Ok(()) => {
                    out.push(lift);
                    found = true;
                    break;
                }
                Err(e) => last = Some(e),
            }
        }
        if !found {
            let why = last.map(|e| e.to_string()).unwrap_or_else(|| "only repeated draws".into());
            return Err(QksError::InadmissiblePoint(format!(
                "no admissible point within {RETRY_BUDGET} draws: {why}"
            )));
        }
    }
    if opts.include_fixed {
        for _ in 0..RETRY_BUDGET {
            let a = sampler.value();
            let fixed: Vec<_> = case
                .fixed_lifts(&a)
                .into_iter()
                .filter(|l| !out.contains(l) && admissible(case, l, need_base).is_ok())
                .collect();
            if !fixed.is_empty() {
                out.extend(fixed);
                break;
            }
            if case.fixed_lifts(&a).is_empty() {
                break;
            }
        }
    }
    Ok(out)
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn not_applicable(case: &CaseSpec) -> String {
    match case.id {
        CaseId::Iv => "not-applicable: center too small for pointwise scan at torus level".into(),
        _ => format!("not-applicable: no pointwise fibers for case {}", case.label()),
    }
}

/// Aggregate verdict over certificates.
pub fn aggregate_verdict(certs: &[Certificate]) -> String {
    if certs.iter().any(|c| c.degree().is_none()) {
        return "not-azumaya".into();
    }
    let mut degrees: Vec<usize> = certs.iter().filter_map(|c| c.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    match degrees.as_slice() {
        [d] => format!("azumaya-consistent({d})"),
        [] => "inconclusive: no points".into(),
        _ => "inconsistent-degree".into(),
    }
}

/// Certifies the fiber at `point`.
pub fn certify(case: &CaseSpec, point: &CentralPoint) -> Result<(usize, Certificate)> {
    let fiber = case.fiber(point)?;
    Ok((fiber.dim(), fiber.matrix_algebra_certificate()))
}

/// Samples points of `Z(A#G)`, certifies each fiber and aggregates.
pub fn azumaya_scan(case: &CaseSpec, opts: &ScanOptions) -> Result<ScanReport> {
    if opts.samples == 0 {
        return Err(QksError::Parse("samples must be at least 1".into()));
    }
    let start = Instant::now();
    let mut report = ScanReport {
        case: case.id,
        params: case.params.clone(),
        seed: opts.seed,
        conductor: case.conductor,
        points: vec![],
        verdict: String::new(),
        expected_d: case.expected_d,
        pass: false,
        timings: None,
    };
    if !case.supports_fibers() {
        report.verdict = not_applicable(case);
        report.pass = case.id == CaseId::Iv;
        return Ok(report);
    }
    let lifts = match sample_lifts(case, opts, false) {
        Ok(l) => l,
        Err(QksError::InadmissiblePoint(why)) => {
            report.verdict = format!("inconclusive: {why}");
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let mut certs = vec![];
    let mut per_point = vec![];
    for (a, b) in &lifts {
        let t = Instant::now();
        let point = case.point_from_lift(a, b)?;
        let (dim, cert) = certify(case, &point)?;
        report
            .points
            .push(PointRecord::new(named_values(&point, case.conductor), dim, &cert));
        certs.push(cert);
        per_point.push(elapsed_ms(t));
    }
    report.verdict = aggregate_verdict(&certs);
    let degree = report.consistent_degree();
    report.pass = if case.azumaya_expected {
        degree.is_some() && (case.expected_d.is_none() || degree == case.expected_d)
    } else {
        // off the Azumaya locus only the stabilized points may fail
        report.verdict != "inconsistent-degree"
    };
    if opts.timings {
        report.timings = Some(Timings {
            total_ms: elapsed_ms(start),
            per_point_ms: per_point,
        });
    }
    Ok(report)
}

/// Samples points of `Z(A)`, records their stabilizers and certifies the
/// fiber of `A#G` over each.
pub fn freeness_scan(case: &CaseSpec, opts: &ScanOptions) -> Result<FreenessReport> {
    if opts.samples == 0 {
        return Err(QksError::Parse("samples must be at least 1".into()));
    }
    let start = Instant::now();
    let mut report = FreenessReport {
        case: case.id,
        params: case.params.clone(),
        seed: opts.seed,
        conductor: case.conductor,
        points: vec![],
        verdict: String::new(),
        azumaya_verdict: String::new(),
        agrees: false,
        pass: false,
        timings: None,
    };
    if !case.x_outer || !case.supports_fibers() || case.base_presentation.is_none() {
        report.verdict = if case.supports_fibers() {
            format!("not-applicable: the action in case {} is not X-outer", case.label())
        } else {
            not_applicable(case)
        };
        report.azumaya_verdict = "-".into();
        return Ok(report);
    }
    let opts = opts.clone().with_fixed();
    let lifts = match sample_lifts(case, &opts, true) {
        Ok(l) => l,
        Err(QksError::InadmissiblePoint(why)) => {
            report.verdict = format!("inconclusive: {why}");
            report.azumaya_verdict = "-".into();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let group = case.ring.group();
    let mut certs = vec![];
    let mut per_point = vec![];
    let mut free = true;
    let mut agrees = true;
    for (a, b) in &lifts {
        let t = Instant::now();
        let base = case.base_point_from_lift(a, b)?;
        let stab = stabilizer_of_point(&base, group)?;
        let point = case.point_from_lift(a, b)?;
        let (dim, cert) = certify(case, &point)?;
        let trivial = stab.len() == 1;
        free &= trivial;
        agrees &= trivial == cert.degree().is_some();
        let rec = PointRecord::new(named_values(&base, case.conductor), dim, &cert);
        report.points.push(FreenessRecord {
            values: rec.values,
            stabilizer: stab.iter().map(|f| f.to_string()).collect(),
            fiber_dim: rec.fiber_dim,
            certificate: rec.certificate,
            d: rec.d,
            witness: rec.witness,
        });
        certs.push(cert);
        per_point.push(elapsed_ms(t));
    }
    report.verdict = if free { "free" } else { "not-free" }.into();
    report.azumaya_verdict = aggregate_verdict(&certs);
    report.agrees = agrees;
    report.pass = agrees && free == case.azumaya_expected;
    if opts.timings {
        report.timings = Some(Timings {
            total_ms: elapsed_ms(start),
            per_point_ms: per_point,
        });
    }
    Ok(report)
}

/// Compares fibers of `A` and of `A#G` over the same points of `Z(A)`.
pub fn rank_check(case: &CaseSpec, opts: &ScanOptions) -> Result<RankReport> {
    if !case.supports_fibers() || case.base_presentation.is_none() {
        return Err(QksError::Unsupported(format!("no fibers for case {}", case.label())));
    }
    let lifts = sample_lifts(case, opts, true)?;
    let order = case.ring.group().order();
    let expected_ratio = if case.x_outer {
        Some(order * order)
    } else if case.id == CaseId::I {
        Some(1)
    } else {
        None
    };
    let mut points = vec![];
    for (a, b) in &lifts {
        let base = case.base_point_from_lift(a, b)?;
        let base_dim = case.base_fiber(&base)?.dim();
        let fiber_dim = case.fiber(&case.point_from_lift(a, b)?)?.dim();
        points.push(RankRecord {
            values: named_values(&base, case.conductor),
            base_dim,
            fiber_dim,
        });
    }
    let ratios: Vec<Option<usize>> = points
        .iter()
        .map(|p| (p.base_dim > 0 && p.fiber_dim % p.base_dim == 0).then(|| p.fiber_dim / p.base_dim))
        .collect();
    let constant = ratios.windows(2).all(|w| w[0] == w[1]) && ratios.iter().all(|r| r.is_some());
    let pass = constant && expected_ratio.is_none_or(|e| ratios.first() == Some(&Some(e)));
    let verdict = match (constant, ratios.first()) {
        (true, Some(Some(1))) => "equal-rank".to_string(),
        (true, Some(Some(r))) => format!("rank-ratio({r})"),
        _ => "inconsistent-rank".to_string(),
    };
    Ok(RankReport {
        case: case.id,
        params: case.params.clone(),
        seed: opts.seed,
        conductor: case.conductor,
        points,
        expected_ratio,
        verdict,
        pass,
    })
}
