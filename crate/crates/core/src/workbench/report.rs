use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{QksError, Result};
use crate::fiber::{Certificate, Witness};
use crate::scalar::CyclotomicNumber;
use crate::skewring::CentralPoint;

use super::catalog::{CaseId, CaseParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

impl FromStr for Format {
    type Err = QksError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            _ => Err(QksError::Parse(format!("unknown format {s:?}; expected human or json"))),
        }
    }
}

/// Process exit status of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Consistent,
    Mismatch,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Consistent => 0,
            Outcome::Mismatch => 1,
            Outcome::Inconclusive => 2,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Consistent
        } else {
            Outcome::Mismatch
        }
    }
}

/// Anything the CLI can print.
pub trait Report: Serialize {
    fn human(&self) -> String;
    fn outcome(&self) -> Outcome;
}

/// Writes `report` to `path`, or to stdout when `path` is `None`.
pub fn emit_report<R: Report>(report: &R, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(report, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| QksError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Human => Ok(report.human()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| QksError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// `c` written over `ℚ(ζ_N)`, falling back to its own field when `N` is too small.
pub fn format_value(c: &CyclotomicNumber, conductor: u32) -> String {
    c.coerce_conductor(conductor)
        .map(|x| x.to_string())
        .unwrap_or_else(|_| c.to_string())
}

pub fn named_values(point: &CentralPoint, conductor: u32) -> BTreeMap<String, String> {
    point
        .presentation()
        .names()
        .into_iter()
        .zip(point.values())
        .map(|(n, v)| (n, format_value(v, conductor)))
        .collect()
}

fn values_cell(values: &BTreeMap<String, String>) -> String {
    values.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

/// Left-aligned columns padded to the widest cell.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let pad = w - c.chars().count();
                let _ = write!(s, "{c}{}  ", " ".repeat(pad));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push('\n');
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn optional<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Timings {
    pub total_ms: u64,
    pub per_point_ms: Vec<u64>,
}

/// One certified fiber.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointRecord {
    pub values: BTreeMap<String, String>,
    pub fiber_dim: usize,
    pub certificate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl PointRecord {
    pub fn new(values: BTreeMap<String, String>, fiber_dim: usize, certificate: &Certificate) -> Self {
        let (name, d, witness) = match certificate {
            Certificate::CentralSimple { degree } => ("central-simple", Some(*degree), None),
            Certificate::NotCentralSimple { witness } => ("not-central-simple", None, Some(witness.clone())),
        };
        PointRecord {
            values,
            fiber_dim,
            certificate: name.into(),
            d,
            witness,
        }
    }

    fn certificate_cell(&self) -> String {
        match (&self.d, &self.witness) {
            (Some(d), _) => format!("central-simple({d})"),
            (_, Some(w)) => format!("not-central-simple: {w}"),
            _ => self.certificate.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScanReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub seed: u64,
    pub conductor: u32,
    pub points: Vec<PointRecord>,
    pub verdict: String,
    pub expected_d: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ScanReport {
    /// The common degree when the verdict is `azumaya-consistent(d)`.
    pub fn consistent_degree(&self) -> Option<usize> {
        self.verdict
            .strip_prefix("azumaya-consistent(")?
            .strip_suffix(')')?
            .parse()
            .ok()
    }
}

fn header_line(out: &mut String, case: CaseId, params: &CaseParams, seed: Option<u64>, conductor: Option<u32>) {
    let _ = write!(out, "case {case}");
    if matches!(case, CaseId::I | CaseId::Iii) {
        let _ = write!(out, "  n={}", params.n);
    }
    if let Some(k) = params.k {
        let _ = write!(out, "  k={k}");
    }
    if let Some(q) = &params.q {
        let _ = write!(out, "  q={q}");
    }
    let _ = write!(out, "  localization={}", params.localization);
    if let Some(s) = seed {
        let _ = write!(out, "  seed={s}");
    }
    if let Some(c) = conductor {
        let _ = write!(out, "  conductor={c}");
    }
    out.push('\n');
}

fn timings_line(out: &mut String, t: &Option<Timings>) {
    if let Some(t) = t {
        let _ = writeln!(out, "time: {} ms", t.total_ms);
    }
}

impl Report for ScanReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, Some(self.seed), Some(self.conductor));
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| vec![i.to_string(), values_cell(&p.values), p.fiber_dim.to_string(), p.certificate_cell()])
            .collect();
        out.push_str(&table(&["#", "point", "dim", "certificate"], &rows));
        let _ = writeln!(
            out,
            "verdict: {}  expected_d: {}  pass: {}",
            self.verdict,
            optional(&self.expected_d),
            yes_no(self.pass)
        );
        timings_line(&mut out, &self.timings);
        out
    }

    fn outcome(&self) -> Outcome {
        if self.verdict.starts_with("not-applicable") || self.verdict.starts_with("inconclusive") {
            Outcome::Inconclusive
        } else {
            Outcome::from_pass(self.pass)
        }
    }
}

/// A point of `Z(A)` with its stabilizer and the fiber of `A#G` over it.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FreenessRecord {
    pub values: BTreeMap<String, String>,
    pub stabilizer: Vec<String>,
    pub fiber_dim: usize,
    pub certificate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FreenessReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub seed: u64,
    pub conductor: u32,
    pub points: Vec<FreenessRecord>,
    pub verdict: String,
    pub azumaya_verdict: String,
    /// Every point is free exactly when its fiber is central simple.
    pub agrees: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl Report for FreenessReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, Some(self.seed), Some(self.conductor));
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let cert = match (&p.d, &p.witness) {
                    (Some(d), _) => format!("central-simple({d})"),
                    (_, Some(w)) => format!("not-central-simple: {w}"),
                    _ => p.certificate.clone(),
                };
                vec![
                    i.to_string(),
                    values_cell(&p.values),
                    p.stabilizer.join(" "),
                    p.fiber_dim.to_string(),
                    cert,
                ]
            })
            .collect();
        out.push_str(&table(&["#", "point of Z(A)", "stabilizer", "dim", "certificate"], &rows));
        let _ = writeln!(
            out,
            "verdict: {}  fibers: {}  agrees: {}  pass: {}",
            self.verdict,
            self.azumaya_verdict,
            yes_no(self.agrees),
            yes_no(self.pass)
        );
        timings_line(&mut out, &self.timings);
        out
    }

    fn outcome(&self) -> Outcome {
        if self.verdict.starts_with("not-applicable") || self.verdict.starts_with("inconclusive") {
            Outcome::Inconclusive
        } else {
            Outcome::from_pass(self.pass)
        }
    }
}

/// Fiber dimensions of `A` and of `A#G` over matched points.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankRecord {
    pub values: BTreeMap<String, String>,
    pub base_dim: usize,
    pub fiber_dim: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub seed: u64,
    pub conductor: u32,
    pub points: Vec<RankRecord>,
    /// `fiber_dim / base_dim` predicted for the case, when known.
    pub expected_ratio: Option<usize>,
    pub verdict: String,
    pub pass: bool,
}

impl Report for RankReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, Some(self.seed), Some(self.conductor));
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                vec![
                    i.to_string(),
                    values_cell(&p.values),
                    p.base_dim.to_string(),
                    p.fiber_dim.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["#", "point of Z(A)", "dim A-fiber", "dim A#G-fiber"], &rows));
        let _ = writeln!(
            out,
            "verdict: {}  expected ratio: {}  pass: {}",
            self.verdict,
            optional(&self.expected_ratio),
            yes_no(self.pass)
        );
        out
    }

    fn outcome(&self) -> Outcome {
        Outcome::from_pass(self.pass)
    }
}

/// A single fiber.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiberReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub conductor: u32,
    pub point: PointRecord,
    pub trace_form_rank: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub semisimple_dim: usize,
    pub semisimple_center_dim: usize,
}

impl Report for FiberReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, None, Some(self.conductor));
        let rows = vec![
            vec!["point".into(), values_cell(&self.point.values)],
            vec!["dimension".into(), self.point.fiber_dim.to_string()],
            vec!["certificate".into(), self.point.certificate_cell()],
            vec!["trace form rank".into(), self.trace_form_rank.to_string()],
            vec!["radical dimension".into(), self.radical_dim.to_string()],
            vec!["center dimension".into(), self.center_dim.to_string()],
            vec!["semisimple quotient".into(), self.semisimple_dim.to_string()],
            vec!["its center".into(), self.semisimple_center_dim.to_string()],
        ];
        out.push_str(&table(&["quantity", "value"], &rows));
        out
    }

    fn outcome(&self) -> Outcome {
        Outcome::Consistent
    }
}

/// Graded dimensions of the center or invariant ring next to an
/// independent count.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub object: String,
    pub degree: i32,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub computed: BTreeMap<i32, usize>,
    /// What `computed` is compared with.
    pub reference: String,
    pub expected: BTreeMap<i32, usize>,
    pub pass: bool,
}

impl Report for GradedReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, None, None);
        let _ = writeln!(out, "{} up to degree {}", self.object, self.degree);
        if !self.generators.is_empty() {
            let _ = writeln!(out, "generators: {}", self.generators.join(", "));
        }
        if !self.relations.is_empty() {
            let _ = writeln!(out, "relations: {}", self.relations.join(", "));
        }
        let degrees: std::collections::BTreeSet<i32> = self.computed.keys().chain(self.expected.keys()).copied().collect();
        let rows: Vec<Vec<String>> = degrees
            .into_iter()
            .map(|d| {
                vec![
                    d.to_string(),
                    self.computed.get(&d).copied().unwrap_or(0).to_string(),
                    self.expected.get(&d).copied().unwrap_or(0).to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&["degree", "computed", self.reference.as_str()], &rows));
        let _ = writeln!(out, "pass: {}", yes_no(self.pass));
        out
    }

    fn outcome(&self) -> Outcome {
        Outcome::from_pass(self.pass)
    }
}

/// Molien series against brute-force counts and a closed form.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesReport {
    pub case: CaseId,
    pub m: u32,
    pub degree: usize,
    pub molien: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_closed_form: Option<bool>,
    pub expansion: Vec<String>,
    pub counts: Vec<u64>,
    pub matches_counts: bool,
    pub pass: bool,
}

impl Report for SeriesReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case {}  m={}  degree={}", self.case, self.m, self.degree);
        let _ = writeln!(out, "molien: {}", self.molien);
        if let (Some(c), Some(ok)) = (&self.closed_form, self.matches_closed_form) {
            let _ = writeln!(out, "closed form: {c}  equal: {}", yes_no(ok));
        }
        let rows: Vec<Vec<String>> = self
            .expansion
            .iter()
            .zip(&self.counts)
            .enumerate()
            .map(|(j, (e, c))| vec![j.to_string(), e.clone(), c.to_string()])
            .collect();
        out.push_str(&table(&["degree", "series", "invariants"], &rows));
        let _ = writeln!(out, "pass: {}", yes_no(self.pass));
        out
    }

    fn outcome(&self) -> Outcome {
        Outcome::from_pass(self.pass)
    }
}

/// One degree of the endomorphism comparison.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AuslanderRow {
    pub degree: usize,
    pub skew_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_dim: Option<usize>,
    pub stable: bool,
    pub injective: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AuslanderReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub degree: usize,
    pub guard: usize,
    pub module_generator_degree: usize,
    pub rows: Vec<AuslanderRow>,
    pub verdict: String,
    pub pass: bool,
}

impl Report for AuslanderReport {
    fn human(&self) -> String {
        let mut out = String::new();
        header_line(&mut out, self.case, &self.params, None, None);
        let _ = writeln!(
            out,
            "degree {}  guard {} and {}  module generators up to degree {}",
            self.degree,
            self.guard,
            self.guard + 2,
            self.module_generator_degree
        );
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.degree.to_string(),
                    r.skew_dim.to_string(),
                    r.hom_dim.map(|h| h.to_string()).unwrap_or_else(|| "inconclusive".into()),
                    yes_no(r.injective).into(),
                ]
            })
            .collect();
        out.push_str(&table(&["j", "dim (A#G)_j", "dim Hom_j", "injective"], &rows));
        let _ = writeln!(out, "verdict: {}  pass: {}", self.verdict, yes_no(self.pass));
        out
    }

    fn outcome(&self) -> Outcome {
        if self.verdict.starts_with("inconclusive") {
            Outcome::Inconclusive
        } else {
            Outcome::from_pass(self.pass)
        }
    }
}
