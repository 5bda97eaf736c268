//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use qks_core::skewring::{CentralPoint, SkewElement};
use qks_core::workbench::{
    auslander_check, azumaya_scan, center_check, fiber_report, freeness_scan, rank_check, series_check,
    CaseId, CaseParams, CaseSpec, Localization, ScanOptions,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, u64);

fn case(id: CaseId, n: u32, k: Option<u32>, loc: Option<Localization>) -> Result<CaseSpec, String> {
    let mut p = CaseParams::new(id, n, k);
    if let Some(l) = loc {
        p = p.with_localization(l);
    }
    CaseSpec::new(id, p).map_err(|e| e.to_string())
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn point(spec: &CaseSpec, text: &str) -> Result<CentralPoint, String> {
    spec.parse_point(text).map_err(err)
}

fn fiber_dichotomy() -> Check {
    let spec = case(CaseId::Zero, 2, None, Some(Localization::None))?;
    let generic = fiber_report(&spec, &point(&spec, "x=3,y=2")?).map_err(err)?;
    require(generic.point.d == Some(2) && generic.point.fiber_dim == 4, || {
        format!("(3,2): dim {} d {:?}", generic.point.fiber_dim, generic.point.d)
    })?;
    let special = fiber_report(&spec, &point(&spec, "x=2,y=1")?).map_err(err)?;
    let sig = (
        special.point.fiber_dim,
        special.trace_form_rank,
        special.radical_dim,
        special.semisimple_center_dim,
        special.point.d,
    );
    require(sig == (4, 2, 2, 2, None), || format!("(2,1): signature {sig:?}"))?;
    Ok("central simple of degree 2 at (3,2); dim 4, trace rank 2, radical 2, center 2 mod radical at (2,1)".into())
}

fn centers() -> Check {
    let cases = [
        case(CaseId::Ii, 2, None, Some(Localization::None))?,
        case(CaseId::Iii, 3, None, Some(Localization::None))?,
        case(CaseId::Iii, 4, None, Some(Localization::None))?,
        case(CaseId::Iv, 2, None, None)?,
        case(CaseId::I, 2, Some(2), Some(Localization::Torus))?,
    ];
    let mut worst = Duration::ZERO;
    for spec in &cases {
        let t = Instant::now();
        let r = center_check(spec, 8).map_err(err)?;
        worst = worst.max(t.elapsed());
        require(r.pass, || format!("{}: computed {:?} vs {:?}", spec.label(), r.computed, r.expected))?;
        require(t.elapsed() < Duration::from_secs(30), || format!("{} took {:?}", spec.label(), t.elapsed()))?;
    }
    Ok(format!("5 centers match their generators through window 8 (slowest {worst:.2?})"))
}

/// `x²y + y^{m+1} + z²` and commutators with `u`, `v` and the group,
/// computed directly in `A#G`.
fn check_xyz(m: u32) -> Result<(), String> {
    let spec = case(CaseId::Iii, 2 * m, None, Some(Localization::None))?;
    let pres = spec.presentation.as_ref().ok_or("no presentation")?;
    let ring = Arc::clone(&spec.ring);
    let gens: Vec<&SkewElement> = pres.generators().iter().map(|g| &g.element).collect();
    let [x, y, z] = gens[..] else {
        return Err(format!("expected x, y, z; got {}", gens.len()));
    };
    let rel = x
        .pow(2)
        .and_then(|x2| x2.mul(y))
        .and_then(|a| a.add(&y.pow(m as i64 + 1)?))
        .and_then(|a| a.add(&z.pow(2)?))
        .map_err(err)?;
    require(rel.is_zero(), || format!("n={}: relation leaves {rel}", 2 * m))?;
    let mut probes = vec![SkewElement::u(&ring), SkewElement::v(&ring)];
    for f in ring.group().generators() {
        probes.push(SkewElement::group_element(&ring, f));
    }
    for g in [x, y, z] {
        for p in &probes {
            let c = g.mul(p).and_then(|a| a.sub(&p.mul(g)?)).map_err(err)?;
            require(c.is_zero(), || format!("n={}: {g} does not commute with {p}", 2 * m))?;
        }
    }
    Ok(())
}

fn series() -> Check {
    for m in [2, 3] {
        let spec = case(CaseId::Iii, 3, None, None)?;
        let r = series_check(&spec, m, 12).map_err(err)?;
        require(r.matches_closed_form == Some(true), || format!("m={m}: {} vs closed form", r.molien))?;
        require(r.matches_counts, || format!("m={m}: expansion {:?} vs counts {:?}", r.expansion, r.counts))?;
        check_xyz(m)?;
    }
    Ok("closed form and counts to degree 12 for m = 2, 3; x, y, z central with x²y + y^{m+1} + z² = 0".into())
}

fn scans() -> Check {
    let cases = [
        case(CaseId::I, 2, Some(2), None)?,
        case(CaseId::I, 3, Some(2), None)?,
        case(CaseId::I, 2, Some(4), None)?,
        case(CaseId::Ii, 2, None, None)?,
        case(CaseId::Iii, 2, None, None)?,
        case(CaseId::Iii, 3, None, None)?,
    ];
    let mut found = vec![];
    for spec in &cases {
        let r = azumaya_scan(spec, &ScanOptions::new(25, 1)).map_err(err)?;
        let d = r.consistent_degree().ok_or_else(|| format!("{}: {}", spec.label(), r.verdict))?;
        require(r.points.len() == 25, || format!("{}: {} points", spec.label(), r.points.len()))?;
        require(Some(d) == spec.expected_d, || format!("{}: d={d}, catalog {:?}", spec.label(), spec.expected_d))?;
        if spec.x_outer {
            let order = spec.ring.group().order();
            let k = spec.ring.algebra().q_order().ok_or("q is not a root of unity")? as usize;
            require(d * d == order * order * k * k, || format!("{}: d²={} vs |G|²k²", spec.label(), d * d))?;
        }
        found.push(format!("{}", d));
    }
    Ok(format!("25 points each, single degrees {}", found.join(", ")))
}

fn freeness() -> Check {
    for spec in [
        case(CaseId::Zero, 2, None, Some(Localization::None))?,
        case(CaseId::Ii, 2, None, Some(Localization::Torus))?,
    ] {
        let r = freeness_scan(&spec, &ScanOptions::new(10, 1)).map_err(err)?;
        let stabilized: Vec<_> = r.points.iter().filter(|p| p.stabilizer.len() > 1).collect();
        let free: Vec<_> = r.points.iter().filter(|p| p.stabilizer.len() == 1).collect();
        require(!stabilized.is_empty(), || format!("{}: no stabilized point", spec.label()))?;
        require(stabilized.iter().all(|p| p.d.is_none()), || {
            format!("{}: a stabilized fiber is central simple", spec.label())
        })?;
        require(!free.is_empty() && free.iter().all(|p| p.d.is_some()), || {
            format!("{}: a free fiber fails the certificate", spec.label())
        })?;
        require(r.agrees && r.verdict == "not-free", || format!("{}: {}", spec.label(), r.verdict))?;
    }
    Ok("stabilized points found and their fibers fail; free points certify".into())
}

fn rank() -> Check {
    let spec = case(CaseId::I, 2, Some(2), Some(Localization::Torus))?;
    let r = rank_check(&spec, &ScanOptions::new(10, 1)).map_err(err)?;
    require(r.points.len() == 10, || format!("{} points", r.points.len()))?;
    require(r.points.iter().all(|p| p.base_dim == p.fiber_dim), || format!("{:?}", r.points))?;
    require(r.verdict == "equal-rank", || r.verdict.clone())?;
    Ok(format!("10 matched points, dim {} for A and A#G", r.points[0].fiber_dim))
}

fn auslander() -> Check {
    for spec in [case(CaseId::Ii, 2, None, None)?, case(CaseId::Iv, 2, None, None)?] {
        let r = auslander_check(&spec, 4, 6).map_err(err)?;
        for row in &r.rows {
            require(row.stable && row.hom_dim == Some(row.skew_dim) && row.injective, || {
                format!("{} degree {}: {row:?}", spec.label(), row.degree)
            })?;
        }
        require(r.verdict == "agree", || r.verdict.clone())?;
    }
    Ok("graded dimensions agree for j ≤ 4, stable between guards 6 and 8, natural map injective".into())
}

fn properties() -> Check {
    for (name, suite) in common::SUITES {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} randomized suites", common::SUITES.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fiber dichotomy", fiber_dichotomy, 1),
        ("centers", centers, 150),
        ("series and invariant relation", series, 60),
        ("azumaya scans", scans, 300),
        ("freeness negative control", freeness, 30),
        ("rank equality", rank, 30),
        ("graded endomorphisms", auslander, 300),
        ("property suites", properties, 120),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let elapsed = t.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= Duration::from_secs(budget) => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget} s budget")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {}: {status} {name} [{elapsed:.2?}] {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
