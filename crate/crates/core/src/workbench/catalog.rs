use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{QksError, Result};
use crate::fiber::{build_fiber, FiberRecipe, FiniteDimAlgebra};
use crate::ncalgebra::{AlgebraKind, AlgebraSpec, GroupElement, GroupKind, GroupSpec, Monomial, Terms};
use crate::scalar::{parse_cyclotomic, parse_rational, CyclotomicNumber};
use crate::series::Matrix;
use crate::skewring::{CentralGenerator, CentralPoint, CentralPresentation, GenPoly, SkewElement, SkewRing};

type Cyclo = CyclotomicNumber;

/// Rows of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    /// `𝕜[u,v]` with `S₂` swapping the variables.
    #[serde(rename = "0")]
    Zero,
    /// `𝕜_q[u,v]` with `C_n`.
    #[serde(rename = "i")]
    I,
    /// `𝕜_{−1}[u,v]` with `S₂`.
    #[serde(rename = "ii")]
    Ii,
    /// `𝕜_{−1}[u,v]` with `D_n`.
    #[serde(rename = "iii")]
    Iii,
    /// The Jordan plane with `C₂`.
    #[serde(rename = "iv")]
    Iv,
}

impl FromStr for CaseId {
    type Err = QksError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(CaseId::Zero),
            "i" => Ok(CaseId::I),
            "ii" => Ok(CaseId::Ii),
            "iii" => Ok(CaseId::Iii),
            "iv" => Ok(CaseId::Iv),
            _ => Err(QksError::Parse(format!("unknown case {s:?}; expected 0, i, ii, iii or iv"))),
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseId::Zero => "0",
            CaseId::I => "i",
            CaseId::Ii => "ii",
            CaseId::Iii => "iii",
            CaseId::Iv => "iv",
        };
        write!(f, "{s}")
    }
}

/// Which elements are inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Localization {
    None,
    /// `u` and `v`.
    Torus,
    /// The case's discriminant element only.
    Denominator,
    TorusPlusDenominator,
}

impl Localization {
    fn torus(self) -> bool {
        matches!(self, Localization::Torus | Localization::TorusPlusDenominator)
    }

    fn denominator(self) -> bool {
        matches!(self, Localization::Denominator | Localization::TorusPlusDenominator)
    }
}

impl FromStr for Localization {
    type Err = QksError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Localization::None),
            "torus" => Ok(Localization::Torus),
            "denominator" => Ok(Localization::Denominator),
            "torus-plus-denominator" => Ok(Localization::TorusPlusDenominator),
            _ => Err(QksError::Parse(format!(
                "unknown localization {s:?}; expected none, torus, denominator or torus-plus-denominator"
            ))),
        }
    }
}

impl fmt::Display for Localization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Localization::None => "none",
            Localization::Torus => "torus",
            Localization::Denominator => "denominator",
            Localization::TorusPlusDenominator => "torus-plus-denominator",
        };
        write!(f, "{s}")
    }
}

/// User-facing parameters of a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseParams {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub localization: Localization,
}

impl CaseParams {
    /// Parameters with the case's default localization.
    pub fn new(id: CaseId, n: u32, k: Option<u32>) -> Self {
        CaseParams {
            n,
            k,
            q: None,
            localization: default_localization(id),
        }
    }

    pub fn with_localization(mut self, localization: Localization) -> Self {
        self.localization = localization;
        self
    }

    /// A rational, non-root-of-unity `q` for case (i).
    pub fn with_q(mut self, q: &str) -> Self {
        self.q = Some(q.to_string());
        self
    }
}

pub fn default_localization(id: CaseId) -> Localization {
    match id {
        CaseId::Zero => Localization::Denominator,
        CaseId::I => Localization::Torus,
        CaseId::Ii | CaseId::Iii => Localization::TorusPlusDenominator,
        CaseId::Iv => Localization::None,
    }
}

/// Fiber degrees measured by building and certifying fibers at sampled
/// points; `None` where no value has been measured.
pub fn recorded_degree(id: CaseId, n: u32, k: Option<u32>, localization: Localization) -> Option<usize> {
    match (id, localization) {
        (CaseId::Zero, Localization::Denominator) => Some(2),
        (CaseId::I, Localization::Torus) => match (n, k?) {
            (2, 2) => Some(2),
            (3, 2) => Some(6),
            (2, 4) => Some(4),
            _ => None,
        },
        (CaseId::Ii, Localization::TorusPlusDenominator) => Some(4),
        (CaseId::Iii, Localization::TorusPlusDenominator) => match n {
            2 => Some(4),
            3 => Some(12),
            _ => None,
        },
        _ => None,
    }
}

/// A catalog row with its derived algebraic data.
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub id: CaseId,
    pub params: CaseParams,
    pub conductor: u32,
    pub ring: Arc<SkewRing>,
    /// Presented `Z(A#G)`, when the catalog has one.
    pub presentation: Option<Arc<CentralPresentation>>,
    /// Presented `Z(A)` on `A#{e}`, by the generators `u^K, v^K`.
    pub base_presentation: Option<Arc<CentralPresentation>>,
    /// Whether `G` acts by X-outer automorphisms.
    pub x_outer: bool,
    /// Whether the localization is one under which `A#G` is Azumaya.
    pub azumaya_expected: bool,
    pub expected_d: Option<usize>,
    modulus: u32,
    kappa: Option<Cyclo>,
}

fn c(n: i64) -> Cyclo {
    Cyclo::from_integer(n)
}

fn monomial_terms(entries: &[(i32, i32, Cyclo)]) -> Terms {
    let mut t = Terms::new();
    for (a, b, c) in entries {
        t.insert(Monomial::new(*a, *b), c.clone());
    }
    t
}

fn generator(name: &str, element: SkewElement, invertible: bool) -> CentralGenerator {
    CentralGenerator {
        name: name.into(),
        element,
        invertible,
    }
}

impl CaseSpec {
    pub fn new(id: CaseId, params: CaseParams) -> Result<Self> {
        let n = params.n;
        let loc = params.localization;
        if n == 0 {
            return Err(QksError::InvalidGroup("n must be positive".into()));
        }
        let (kind, group, conductor, modulus) = match id {
            CaseId::Zero => (AlgebraKind::Commutative, GroupSpec::sym2(), 1, 1),
            CaseId::I => match (params.k, &params.q) {
                (Some(k), None) if k >= 1 => (
                    AlgebraKind::QuantumPlane(Cyclo::zeta(k)),
                    GroupSpec::cyclic(n),
                    n.lcm(&k),
                    k,
                ),
                (None, Some(q)) => {
                    let q = Cyclo::from_rational(parse_rational(q)?);
                    (AlgebraKind::QuantumPlane(q), GroupSpec::cyclic(n), n, 0)
                }
                _ => return Err(QksError::Parse("case i needs exactly one of --k or --q".into())),
            },
            CaseId::Ii => (AlgebraKind::QuantumPlane(c(-1)), GroupSpec::sym2(), 2, 2),
            CaseId::Iii => {
                let conductor = if n.is_multiple_of(2) { n.lcm(&4) } else { n.lcm(&2) };
                (AlgebraKind::QuantumPlane(c(-1)), GroupSpec::dihedral(n), conductor, 2)
            }
            CaseId::Iv => (AlgebraKind::JordanPlane, GroupSpec::new(GroupKind::Cyclic(2), c(-1))?, 2, 0),
        };
        if id == CaseId::Iv && loc.torus() {
            return Err(QksError::Unsupported("case iv is only catalogued unlocalized".into()));
        }
        let mut alg = AlgebraSpec::new(kind, loc.torus(), loc.torus())?;
        if loc.denominator() {
            let den = match id {
                CaseId::Zero => monomial_terms(&[(1, 0, c(1)), (0, 1, c(-1))]),
                CaseId::Ii => monomial_terms(&[(2, 0, c(1)), (0, 2, c(-1))]),
                CaseId::Iii => {
                    let e = 2 * n as i32;
                    monomial_terms(&[(e, 0, c(1)), (0, e, c(-1))])
                }
                _ => return Err(QksError::Unsupported(format!("case {id} has no catalogued denominator"))),
            };
            alg = alg.with_denominators(vec![den])?;
        }
        let ring = SkewRing::new(alg, group)?;
        let mut spec = CaseSpec {
            id,
            params: params.clone(),
            conductor,
            ring,
            presentation: None,
            base_presentation: None,
            x_outer: false,
            azumaya_expected: false,
            expected_d: recorded_degree(id, n, params.k, loc),
            modulus,
            kappa: None,
        };
        spec.fill_presentations()?;
        Ok(spec)
    }

    /// `K`: `u^K` and `v^K` generate the center of the base algebra.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn label(&self) -> String {
        let p = &self.params;
        let mut parts = vec![];
        if matches!(self.id, CaseId::I | CaseId::Iii) {
            parts.push(format!("n={}", p.n));
        }
        if let Some(k) = p.k {
            parts.push(format!("k={k}"));
        }
        if let Some(q) = &p.q {
            parts.push(format!("q={q}"));
        }
        parts.push(p.localization.to_string());
        format!("{}({})", self.id, parts.join(","))
    }

    fn fill_presentations(&mut self) -> Result<()> {
        let ring = Arc::clone(&self.ring);
        let loc = self.params.localization;
        let n = self.params.n;
        let u = SkewElement::u(&ring);
        let v = SkewElement::v(&ring);
        let torus = loc.torus();
        let den = loc.denominator();
        match self.id {
            CaseId::Zero => {
                let gens = vec![
                    generator("x", u.add(&v)?, false),
                    generator("y", u.mul(&v)?, false),
                ];
                let (x, y) = (GenPoly::var(2, 0), GenPoly::var(2, 1));
                let disc = x.pow(2).sub(&y.scale(&c(4)));
                let local = if den { vec![disc] } else { vec![] };
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, gens, vec![], local)?));
                self.x_outer = true;
                self.azumaya_expected = den;
            }
            CaseId::I => {
                let Some(k) = self.params.k else {
                    return Ok(());
                };
                self.x_outer = n.gcd(&k) == 1;
                if !torus {
                    return Ok(());
                }
                let l = n.lcm(&k);
                let h = n.gcd(&k);
                let big_u = SkewElement::monomial(&ring, l as i32, 0, GroupElement::IDENTITY, c(1))?;
                let uv = SkewElement::monomial(&ring, 1, 1, GroupElement::IDENTITY, c(1))?;
                let g = SkewElement::group_element(&ring, ring.group().rotation((l / k) as i64));
                let t = uv.pow(-((l / n) as i64))?.mul(&g)?;
                // t^h = κ·u^{-k}v^{-k}
                let th = t.pow(h as i64)?;
                let terms: Vec<_> = th.terms().collect();
                let kappa = match terms.as_slice() {
                    [(f, m, coef)] if f.is_identity() && m.a == -(k as i32) && m.b == -(k as i32) => (*coef).clone(),
                    _ => return Err(QksError::InconsistentRecipe(format!("unexpected power of t: {th}"))),
                };
                self.kappa = Some(kappa);
                let gens = vec![generator("U", big_u, true), generator("t", t, true)];
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, gens, vec![], vec![])?));
                self.azumaya_expected = true;
            }
            CaseId::Ii => {
                let u2 = u.pow(2)?;
                let v2 = v.pow(2)?;
                let gens = vec![
                    generator("x", u2.mul(&v2)?, torus),
                    generator("y", u2.add(&v2)?, false),
                ];
                let (x, y) = (GenPoly::var(2, 0), GenPoly::var(2, 1));
                let disc = y.pow(2).sub(&x.scale(&c(4)));
                let local = if den { vec![disc] } else { vec![] };
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, gens, vec![], local)?));
                self.x_outer = true;
                self.azumaya_expected = torus && den;
            }
            CaseId::Iii if n % 2 == 1 => {
                let u2 = u.pow(2)?;
                let v2 = v.pow(2)?;
                let gens = vec![
                    generator("x", u2.mul(&v2)?, torus),
                    generator("y", u2.pow(n as i64)?.add(&v2.pow(n as i64)?)?, false),
                ];
                let (x, y) = (GenPoly::var(2, 0), GenPoly::var(2, 1));
                let disc = y.pow(2).sub(&x.pow(n).scale(&c(4)));
                let local = if den { vec![disc] } else { vec![] };
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, gens, vec![], local)?));
                self.x_outer = true;
                self.azumaya_expected = torus && den;
            }
            CaseId::Iii => {
                let m = n / 2;
                let half_i = &Cyclo::i() * &Cyclo::from_ratio(1, 2);
                let gm = SkewElement::group_element(&ring, ring.group().rotation(m as i64));
                let x = u.pow(n as i64)?.add(&v.pow(n as i64)?)?.scale(&half_i);
                let y = u.pow(2)?.mul(&v.pow(2)?)?;
                let z = u
                    .pow(n as i64 + 1)?
                    .mul(&v)?
                    .sub(&u.mul(&v.pow(n as i64 + 1)?)?)?
                    .mul(&gm)?
                    .scale(&half_i);
                let gens = vec![generator("x", x, false), generator("y", y, torus), generator("z", z, false)];
                let (gx, gy, gz) = (GenPoly::var(3, 0), GenPoly::var(3, 1), GenPoly::var(3, 2));
                let relation = gx.pow(2).mul(&gy).add(&gy.pow(m + 1)).add(&gz.pow(2));
                let disc = gx.pow(4).add(&gx.pow(2).mul(&gy.pow(m)));
                let local = if den { vec![disc] } else { vec![] };
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, gens, vec![relation], local)?));
                self.x_outer = false;
                self.azumaya_expected = torus && den;
            }
            CaseId::Iv => {
                self.presentation = Some(Arc::new(CentralPresentation::new(&ring, vec![], vec![], vec![])?));
                self.x_outer = true;
            }
        }
        if self.modulus > 0 && self.presentation.is_some() {
            let plain = SkewRing::new(Arc::clone(ring.algebra()), GroupSpec::trivial())?;
            let k = self.modulus as i32;
            let gens = vec![
                generator("a", SkewElement::monomial(&plain, k, 0, GroupElement::IDENTITY, c(1))?, torus),
                generator("b", SkewElement::monomial(&plain, 0, k, GroupElement::IDENTITY, c(1))?, torus),
            ];
            let (a, b) = (GenPoly::var(2, 0), GenPoly::var(2, 1));
            let local = match self.id {
                CaseId::Zero | CaseId::Ii if den => vec![a.sub(&b)],
                CaseId::Iii if den => vec![a.pow(n).sub(&b.pow(n))],
                _ => vec![],
            };
            self.base_presentation = Some(Arc::new(CentralPresentation::new(&plain, gens, vec![], local)?));
        }
        Ok(())
    }

    /// Whether pointwise fibers can be built for this case.
    pub fn supports_fibers(&self) -> bool {
        self.modulus > 0 && self.presentation.as_ref().is_some_and(|p| p.nvars() > 0)
    }

    fn presentation_or_err(&self) -> Result<&Arc<CentralPresentation>> {
        self.presentation
            .as_ref()
            .ok_or_else(|| QksError::Unsupported(format!("case {} has no presented center", self.label())))
    }

    /// A point of `Z(A#G)` from `name=value` pairs separated by commas;
    /// values are read over `ℚ(ζ_N)` with `N` the case conductor.
    pub fn parse_point(&self, text: &str) -> Result<CentralPoint> {
        let pres = self.presentation_or_err()?;
        let mut named = vec![];
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| QksError::Parse(format!("expected name=value, got {part:?}")))?;
            named.push((name.trim().to_string(), parse_cyclotomic(value.trim(), self.conductor)?));
        }
        CentralPoint::from_named(pres, &named)
    }

    /// Reduction data for the fiber at `point`.
    pub fn recipe(&self, point: &CentralPoint) -> Result<FiberRecipe> {
        if !self.supports_fibers() {
            return Err(QksError::Unsupported(format!("no fiber recipe for case {}", self.label())));
        }
        let val = |name: &str| -> Result<Cyclo> {
            point
                .value(name)
                .cloned()
                .ok_or_else(|| QksError::InadmissiblePoint(format!("missing value for {name}")))
        };
        let n = self.params.n;
        let recipe = match self.id {
            CaseId::Zero => {
                let (x, y) = (val("x")?, val("y")?);
                FiberRecipe::new(1, vec![y, -x.clone(), c(1)], BTreeMap::from([(0, x), (1, c(-1))]))
            }
            CaseId::I => {
                let k = self.params.k.expect("root of unity");
                let l = n.lcm(&k);
                let h = n.gcd(&k);
                let (big_u, t) = (val("U")?, val("t")?);
                let mut p = vec![c(0); (l / k) as usize + 1];
                p[0] = -big_u;
                p[(l / k) as usize] = c(1);
                let kappa = self.kappa.clone().expect("computed with the presentation");
                let v = &kappa * &t.pow(-(h as i64))?;
                let residual = if h > 1 {
                    let tz = &self.presentation_or_err()?.generators()[1].element;
                    vec![tz.sub(&SkewElement::scalar(&self.ring, t))?]
                } else {
                    vec![]
                };
                FiberRecipe::new(k, p, BTreeMap::from([(-1, v)])).with_residual(residual)
            }
            CaseId::Ii => {
                let (x, y) = (val("x")?, val("y")?);
                FiberRecipe::new(2, vec![x, -y.clone(), c(1)], BTreeMap::from([(0, y), (1, c(-1))]))
            }
            CaseId::Iii if n % 2 == 1 => {
                let (x, y) = (val("x")?, val("y")?);
                let nn = n as usize;
                let mut p = vec![c(0); 2 * nn + 1];
                p[0] = x.pow(n as i64)?;
                p[nn] = -y;
                p[2 * nn] = c(1);
                FiberRecipe::new(2, p, BTreeMap::from([(-1, x)]))
            }
            CaseId::Iii => {
                let m = (n / 2) as usize;
                let (x, y, z) = (val("x")?, val("y")?, val("z")?);
                let mut p = vec![c(0); 2 * m + 1];
                p[0] = y.pow(m as i64)?;
                p[m] = &(&c(2) * &Cyclo::i()) * &x;
                p[2 * m] = c(1);
                let zz = &self.presentation_or_err()?.generators()[2].element;
                let residual = vec![zz.sub(&SkewElement::scalar(&self.ring, z))?];
                FiberRecipe::new(2, p, BTreeMap::from([(-1, y)])).with_residual(residual)
            }
            CaseId::Iv => unreachable!("no fibers"),
        };
        Ok(recipe)
    }

    /// The fiber `T/𝔪T`.
    pub fn fiber(&self, point: &CentralPoint) -> Result<FiniteDimAlgebra> {
        build_fiber(&self.ring, point, &self.recipe(point)?)
    }

    /// A point of `Z(A#G)` from two lift coordinates.
    ///
    /// The coordinates are `(u, v)` for case 0, `(u^k, t)` for case (i),
    /// `(u², v²)` for cases (ii) and (iii) with `n` odd, and `(u², c)` with
    /// `c = i·uv·g^{n/2}` for case (iii) with `n` even.
    pub fn point_from_lift(&self, a: &Cyclo, b: &Cyclo) -> Result<CentralPoint> {
        let p = self.presentation_or_err()?;
        let n = self.params.n as i64;
        let values = match self.id {
            CaseId::Zero => vec![a + b, a * b],
            CaseId::I => {
                let k = self.params.k.expect("root of unity") as i64;
                let l = (n as u32).lcm(&(k as u32)) as i64;
                vec![a.pow(l / k)?, b.clone()]
            }
            CaseId::Ii => vec![a * b, a + b],
            CaseId::Iii if n % 2 == 1 => vec![a * b, &a.pow(n)? + &b.pow(n)?],
            CaseId::Iii => {
                let m = n / 2;
                let bb = (b * b).checked_div(a)?;
                let half = Cyclo::from_ratio(1, 2);
                let x = &(&Cyclo::i() * &half) * &(&a.pow(m)? + &bb.pow(m)?);
                let z = &(&half * &(&a.pow(m)? - &bb.pow(m)?)) * b;
                vec![x, a * &bb, z]
            }
            CaseId::Iv => return Err(QksError::Unsupported("case iv has no points".into())),
        };
        CentralPoint::new(p, values)
    }

    /// A point of `Z(A)` (values of `u^K, v^K`) from lift coordinates.
    pub fn base_point_from_lift(&self, a: &Cyclo, b: &Cyclo) -> Result<CentralPoint> {
        let p = self
            .base_presentation
            .as_ref()
            .ok_or_else(|| QksError::Unsupported(format!("case {} has no presented Z(A)", self.label())))?;
        let values = match self.id {
            CaseId::I => {
                let k = self.params.k.expect("root of unity");
                let h = self.params.n.gcd(&k) as i64;
                let kappa = self.kappa.clone().expect("computed with the presentation");
                vec![a.clone(), (&kappa * &b.pow(-h)?).checked_div(a)?]
            }
            CaseId::Iii if self.params.n.is_multiple_of(2) => vec![a.clone(), (b * b).checked_div(a)?],
            _ => vec![a.clone(), b.clone()],
        };
        CentralPoint::new(p, values)
    }

    /// The point of `Z(A#G)` under a point of `Z(A)` given by `(u^K, v^K)`.
    pub fn point_under(&self, base: &CentralPoint) -> Result<CentralPoint> {
        let (a, b) = (&base.values()[0], &base.values()[1]);
        match self.id {
            CaseId::I => {
                if !self.x_outer {
                    return Err(QksError::Unsupported("the image point needs an h-th root".into()));
                }
                let kappa = self.kappa.clone().expect("computed with the presentation");
                self.point_from_lift(a, &kappa.checked_div(&(a * b))?)
            }
            CaseId::Iii if self.params.n.is_multiple_of(2) => Err(QksError::Unsupported(
                "points of Z(A) do not determine z for n even".into(),
            )),
            _ => self.point_from_lift(a, b),
        }
    }

    /// Lift coordinates of points of `Z(A)` fixed by some reflection, built
    /// from the first coordinate `a`.
    pub fn fixed_lifts(&self, a: &Cyclo) -> Vec<(Cyclo, Cyclo)> {
        let group = self.ring.group();
        let k = self.modulus as i64;
        let mut out = vec![];
        if !matches!(self.id, CaseId::Zero | CaseId::Ii) && !(self.id == CaseId::Iii && self.params.n % 2 == 1) {
            return out;
        }
        for f in group.elements() {
            let act = group.action(f);
            if act.swap {
                let b = a * &group.omega_pow(-act.eu * k);
                if !out.contains(&(a.clone(), b.clone())) {
                    out.push((a.clone(), b));
                }
            }
        }
        out
    }

    /// Dimension of the fiber of `A` alone over `Z(A)` at a base point.
    pub fn base_fiber(&self, base: &CentralPoint) -> Result<FiniteDimAlgebra> {
        let plain = Arc::clone(
            self.base_presentation
                .as_ref()
                .ok_or_else(|| QksError::Unsupported("no presented Z(A)".into()))?
                .ring(),
        );
        let (a, b) = (base.values()[0].clone(), base.values()[1].clone());
        let recipe = FiberRecipe::new(self.modulus, vec![-a, c(1)], BTreeMap::from([(0, b)]));
        build_fiber(&plain, base, &recipe)
    }

    /// Explicit matrices of the group on `span{u, v}`, or the three-dimensional
    /// `D_m` representation on `(u², v², i·uv·g^m)` for case (iii).
    pub fn molien_matrices(&self, m: u32) -> Vec<Matrix> {
        match self.id {
            CaseId::I => cyclic_representation(m),
            CaseId::Iii => dihedral_representation(m),
            _ => {
                let g = self.ring.group();
                g.elements()
                    .into_iter()
                    .map(|f| g.matrix(f).iter().map(|r| r.to_vec()).collect())
                    .collect()
            }
        }
    }
}

/// `C_m` on a plane by `diag(ε^i, ε^{−i})`.
pub fn cyclic_representation(m: u32) -> Vec<Matrix> {
    (0..m as i64)
        .map(|i| {
            vec![
                vec![Cyclo::primitive_root_of_unity(i, m), c(0)],
                vec![c(0), Cyclo::primitive_root_of_unity(-i, m)],
            ]
        })
        .collect()
}

/// `D_m` on `(a, b, c)`: `σ^i = diag(ε^i, ε^{−i}, 1)` and
/// `σ^iτ = [[0, ε^i, 0], [ε^{−i}, 0, 0], [0, 0, −1]]`.
pub fn dihedral_representation(m: u32) -> Vec<Matrix> {
    let e = |i: i64| Cyclo::primitive_root_of_unity(i, m);
    let mut out = vec![];
    for i in 0..m as i64 {
        out.push(vec![
            vec![e(i), c(0), c(0)],
            vec![c(0), e(-i), c(0)],
            vec![c(0), c(0), c(1)],
        ]);
    }
    for i in 0..m as i64 {
        out.push(vec![
            vec![c(0), e(i), c(0)],
            vec![e(-i), c(0), c(0)],
            vec![c(0), c(0), c(-1)],
        ]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentations_are_central() {
        for (id, n, k) in [
            (CaseId::Zero, 1, None),
            (CaseId::I, 2, Some(2)),
            (CaseId::I, 3, Some(2)),
            (CaseId::I, 2, Some(4)),
            (CaseId::Ii, 1, None),
            (CaseId::Iii, 3, None),
            (CaseId::Iii, 2, None),
            (CaseId::Iii, 4, None),
        ] {
            let case = CaseSpec::new(id, CaseParams::new(id, n, k)).unwrap();
            case.presentation.as_ref().unwrap().validate().unwrap();
        }
    }

    #[test]
    fn case_i_twist() {
        let case = CaseSpec::new(CaseId::I, CaseParams::new(CaseId::I, 2, Some(2))).unwrap();
        assert!(!case.x_outer);
        assert!(case.kappa.is_some());
        let outer = CaseSpec::new(CaseId::I, CaseParams::new(CaseId::I, 3, Some(2))).unwrap();
        assert!(outer.x_outer);
    }

    #[test]
    fn reflections_fix_the_diagonal() {
        let case = CaseSpec::new(CaseId::Ii, CaseParams::new(CaseId::Ii, 1, None).with_localization(Localization::Torus)).unwrap();
        assert_eq!(case.fixed_lifts(&c(3)), vec![(c(3), c(3))]);
    }
}
