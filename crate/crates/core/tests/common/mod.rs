//! Randomized property suites shared by the `properties` and `acceptance`
//! targets. Every suite runs from a fixed seed.

#![allow(dead_code)]

use std::cell::Cell;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use qks_core::fiber::FiniteDimAlgebra;
use qks_core::linalg::{rank_dense, SparseVec};
use qks_core::ncalgebra::{apply_automorphism, AlgebraSpec, GroupElement, GroupSpec, NCPoly};
use qks_core::scalar::CyclotomicNumber as Cyclo;
use qks_core::series::{identity_matrix, invariant_counts, molien_series, Matrix};
use qks_core::skewring::{stabilizer_of_point, SkewElement, SkewRing};
use qks_core::workbench::{
    cyclic_representation, dihedral_representation, CaseId, CaseParams, CaseSpec, Localization, PointSampler,
    RETRY_BUDGET,
};

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("field axioms", field_axioms),
    ("conductor coercion", conductor_coercion),
    ("root of unity orders", root_orders),
    ("rewrite associativity", rewrite_associativity),
    ("automorphism multiplicativity", automorphism_multiplicativity),
    ("skew associativity", skew_associativity),
    ("molien nonnegativity", molien_nonnegativity),
    ("fiber associativity", fiber_associativity),
    ("stabilizers are subgroups", stabilizers_are_subgroups),
];

fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn run<S: Strategy>(
    cases: u32,
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases, seed).run(&strategy, test).map_err(|e| e.to_string())
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

const CONDUCTORS: &[u32] = &[1, 2, 3, 4, 5, 6, 8, 10, 12, 24];

/// `Σ c_j ζ_N^j` with small rational `c_j`.
fn cyclo_at(n: u32) -> impl Strategy<Value = Cyclo> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n as usize).prop_map(move |cs| {
        cs.into_iter()
            .enumerate()
            .fold(Cyclo::zero(), |acc, (j, (p, q))| {
                &acc + &(&Cyclo::from_ratio(p, q) * &Cyclo::primitive_root_of_unity(j as i64, n))
            })
    })
}

fn cyclo_triple() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|n| (cyclo_at(n), cyclo_at(n), cyclo_at(n)))
}

pub fn field_axioms() -> Result<(), String> {
    run(1000, 1, cyclo_triple(), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &Cyclo::one(), a.clone());
        if !a.is_zero() {
            let inv = ok(a.inv())?;
            prop_assert!((&a * &inv).is_one());
        }
        prop_assert_eq!((&a - &b).is_zero(), a == b);
        Ok(())
    })
}

pub fn conductor_coercion() -> Result<(), String> {
    let pair = (prop::sample::select(CONDUCTORS), prop::sample::select(CONDUCTORS))
        .prop_flat_map(|(n, m)| (cyclo_at(n), cyclo_at(m)));
    run(300, 2, pair, |(a, b)| {
        let l = num_integer::lcm(a.conductor(), b.conductor());
        let (ca, cb) = (ok(a.coerce_conductor(l))?, ok(b.coerce_conductor(l))?);
        prop_assert_eq!(ca.conductor(), l);
        prop_assert_eq!(&ca * &cb, &a * &b);
        prop_assert_eq!(&ca, &a);
        Ok(())
    })
}

pub fn root_orders() -> Result<(), String> {
    for n in 1..=12u32 {
        for j in 0..n as i64 {
            let z = Cyclo::primitive_root_of_unity(j, n);
            let want = n / num_integer::gcd(j as u32, n);
            if z.multiplicative_order() != Some(want) {
                return Err(format!("order of zeta_{n}^{j} is {:?}, want {want}", z.multiplicative_order()));
            }
        }
    }
    Ok(())
}

fn algebras() -> Vec<Arc<AlgebraSpec>> {
    let quantum = |q: Cyclo| AlgebraSpec::quantum(q).expect("nonzero q");
    vec![
        AlgebraSpec::commutative(),
        quantum(Cyclo::from_integer(-1)),
        quantum(Cyclo::zeta(3)),
        quantum(Cyclo::from_integer(2)),
        AlgebraSpec::jordan(),
        quantum(Cyclo::zeta(4)).localized(true, true).expect("torus"),
        AlgebraSpec::jordan().localized(true, false).expect("localized Jordan plane"),
    ]
}

/// Up to three terms with exponents in `lo..=hi`.
fn poly_terms(lo: i32, hi: i32) -> impl Strategy<Value = Vec<(i32, i32, i64)>> {
    prop::collection::vec((lo..=hi, lo..=hi, -3i64..=3), 1..=3)
}

fn build_poly(alg: &Arc<AlgebraSpec>, terms: &[(i32, i32, i64)]) -> Result<NCPoly, TestCaseError> {
    let mut p = NCPoly::zero(alg);
    for &(a, b, c) in terms {
        let (a, b) = (if alg.invert_u() { a } else { a.abs() }, if alg.invert_v() { b } else { b.abs() });
        p = ok(p.add(&ok(NCPoly::monomial(alg, a, b, Cyclo::from_integer(c)))?))?;
    }
    Ok(p)
}

fn same(x: &NCPoly, y: &NCPoly) -> Result<bool, TestCaseError> {
    Ok(ok(x.sub(y))?.is_zero())
}

pub fn rewrite_associativity() -> Result<(), String> {
    for (i, alg) in algebras().into_iter().enumerate() {
        let strategy = (poly_terms(-2, 3), poly_terms(-2, 3), poly_terms(-2, 3));
        run(500, 10 + i as u8, strategy, |(x, y, z)| {
            let (x, y, z) = (build_poly(&alg, &x)?, build_poly(&alg, &y)?, build_poly(&alg, &z)?);
            let left = ok(ok(x.mul(&y))?.mul(&z))?;
            let right = ok(x.mul(&ok(y.mul(&z))?))?;
            prop_assert!(same(&left, &right)?, "(xy)z != x(yz)");
            prop_assert!(same(&ok(x.mul(&NCPoly::one(&alg)))?, &x)?);
            prop_assert!(same(&ok(NCPoly::one(&alg).mul(&x))?, &x)?);
            let dist = ok(x.mul(&ok(y.add(&z))?))?;
            prop_assert!(same(&dist, &ok(ok(x.mul(&y))?.add(&ok(x.mul(&z))?))?)?);
            Ok(())
        })
        .map_err(|e| format!("algebra #{i}: {e}"))?;
    }
    Ok(())
}

/// `(name, algebra, group)` pairs on which the group acts.
fn actions() -> Vec<(&'static str, Arc<AlgebraSpec>, GroupSpec)> {
    let ring = |id, n, k| {
        let spec = CaseSpec::new(id, CaseParams::new(id, n, k)).expect("catalog case");
        (Arc::clone(spec.ring.algebra()), spec.ring.group().clone())
    };
    let (d4_alg, d4) = ring(CaseId::Iii, 4, None);
    let (c6_alg, c6) = ring(CaseId::I, 6, Some(3));
    let (j_alg, j) = ring(CaseId::Iv, 2, None);
    vec![("D4", d4_alg, d4), ("C6", c6_alg, c6), ("C2 on the Jordan plane", j_alg, j)]
}

pub fn automorphism_multiplicativity() -> Result<(), String> {
    for (i, (name, alg, group)) in actions().into_iter().enumerate() {
        let elems = group.elements();
        let strategy = (
            prop::sample::select(elems.clone()),
            prop::sample::select(elems),
            poly_terms(-2, 3),
            poly_terms(-2, 3),
        );
        run(200, 20 + i as u8, strategy, |(f, h, x, y)| {
            let (x, y) = (build_poly(&alg, &x)?, build_poly(&alg, &y)?);
            let fx = ok(apply_automorphism(&group, f, &x))?;
            let fy = ok(apply_automorphism(&group, f, &y))?;
            let fxy = ok(apply_automorphism(&group, f, &ok(x.mul(&y))?))?;
            prop_assert!(same(&fxy, &ok(fx.mul(&fy))?)?, "f(xy) != f(x)f(y)");
            let composed = ok(apply_automorphism(&group, f, &ok(apply_automorphism(&group, h, &x))?))?;
            let product = ok(apply_automorphism(&group, group.multiply(f, h), &x))?;
            prop_assert!(same(&composed, &product)?, "f(h(x)) != (fh)(x)");
            Ok(())
        })
        .map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn catalog() -> Vec<CaseSpec> {
    let case = |id, n, k, loc: Option<Localization>| {
        let mut p = CaseParams::new(id, n, k);
        if let Some(l) = loc {
            p = p.with_localization(l);
        }
        CaseSpec::new(id, p).expect("catalog case")
    };
    vec![
        case(CaseId::Zero, 2, None, None),
        case(CaseId::Zero, 2, None, Some(Localization::None)),
        case(CaseId::I, 2, Some(2), None),
        case(CaseId::I, 3, Some(2), None),
        case(CaseId::I, 2, Some(4), None),
        case(CaseId::Ii, 2, None, None),
        case(CaseId::Ii, 2, None, Some(Localization::Torus)),
        case(CaseId::Iii, 2, None, None),
        case(CaseId::Iii, 3, None, None),
        case(CaseId::Iii, 4, None, Some(Localization::None)),
        case(CaseId::Iv, 2, None, None),
    ]
}

fn skew(ring: &Arc<SkewRing>, terms: &[(i32, i32, i64, usize)]) -> Result<SkewElement, TestCaseError> {
    let alg = ring.algebra();
    let elems = ring.group().elements();
    let mut x = SkewElement::zero(ring);
    for &(a, b, c, f) in terms {
        let (a, b) = (if alg.invert_u() { a } else { a.abs() }, if alg.invert_v() { b } else { b.abs() });
        let m = ok(SkewElement::monomial(ring, a, b, elems[f % elems.len()], Cyclo::from_integer(c)))?;
        x = ok(x.add(&m))?;
    }
    Ok(x)
}

pub fn skew_associativity() -> Result<(), String> {
    for (i, case) in catalog().into_iter().enumerate() {
        let ring = Arc::clone(&case.ring);
        let terms = || prop::collection::vec((-2i32..=2, -2i32..=2, -3i64..=3, 0usize..8), 1..=2);
        run(500, 30 + i as u8, (terms(), terms(), terms()), |(x, y, z)| {
            let (x, y, z) = (skew(&ring, &x)?, skew(&ring, &y)?, skew(&ring, &z)?);
            let left = ok(ok(x.mul(&y))?.mul(&z))?;
            let right = ok(x.mul(&ok(y.mul(&z))?))?;
            prop_assert!(ok(left.sub(&right))?.is_zero(), "(xy)z != x(yz)");
            Ok(())
        })
        .map_err(|e| format!("{}: {e}", case.label()))?;
    }
    Ok(())
}

/// Common fixed space of a matrix group, by rank of the stacked `A − I`.
fn fixed_dim(mats: &[Matrix]) -> usize {
    let n = mats[0].len();
    let id = identity_matrix(n);
    let rows: Vec<Vec<Cyclo>> = mats
        .iter()
        .flat_map(|a| (0..n).map(|r| (0..n).map(|c| &a[r][c] - &id[r][c]).collect::<Vec<_>>()).collect::<Vec<_>>())
        .collect();
    n - rank_dense(&rows)
}

pub fn molien_nonnegativity() -> Result<(), String> {
    let mut groups: Vec<(String, Vec<Matrix>)> = vec![];
    for m in 1..=6 {
        groups.push((format!("cyclic {m}"), cyclic_representation(m)));
        if m >= 2 {
            groups.push((format!("dihedral {m}"), dihedral_representation(m)));
        }
    }
    for group in [GroupSpec::cyclic(3), GroupSpec::cyclic(4), GroupSpec::dihedral(3), GroupSpec::dihedral(4)] {
        let mats = group
            .elements()
            .into_iter()
            .map(|f| group.matrix(f).iter().map(|r| r.to_vec()).collect())
            .collect();
        groups.push((format!("{:?} on the plane", group.kind()), mats));
    }
    for (name, mats) in groups {
        let f = molien_series(&mats).map_err(|e| e.to_string())?;
        let coeffs = f.expand(20);
        let counts = qks_core::series::as_counts(&coeffs).ok_or(format!("{name}: non-integral or negative"))?;
        if counts[0] != 1 {
            return Err(format!("{name}: constant term {}", counts[0]));
        }
        if counts[1] as usize != fixed_dim(&mats) {
            return Err(format!("{name}: linear term {} vs fixed space {}", counts[1], fixed_dim(&mats)));
        }
        let brute = invariant_counts(&mats, 8).map_err(|e| e.to_string())?;
        if brute[..] != counts[..=8] {
            return Err(format!("{name}: series {:?} vs counts {brute:?}", &counts[..=8]));
        }
    }
    Ok(())
}

/// An admissible point of `Z(A#G)` for `seed`, or `None` when the budget runs out.
fn sample_point(case: &CaseSpec, seed: u64) -> Option<qks_core::skewring::CentralPoint> {
    let mut sampler = PointSampler::new(seed, case.conductor);
    (0..RETRY_BUDGET).find_map(|_| {
        let (a, b) = sampler.pair();
        case.point_from_lift(&a, &b).ok()
    })
}

fn random_vec(dim: usize, entries: &[(usize, i64)]) -> SparseVec {
    let mut dense = vec![Cyclo::zero(); dim];
    for &(i, c) in entries {
        dense[i % dim] = &dense[i % dim] + &Cyclo::from_integer(c);
    }
    qks_core::linalg::sparse_from_dense(&dense)
}

fn check_fiber(fiber: &FiniteDimAlgebra, triples: &[[Vec<(usize, i64)>; 3]]) -> Result<(), TestCaseError> {
    let n = fiber.dim();
    prop_assert!(fiber.is_unital(), "unit fails");
    if n <= 40 {
        prop_assert!(fiber.is_associative_on_basis(), "basis triple fails");
    }
    for [x, y, z] in triples {
        let (x, y, z) = (random_vec(n, x), random_vec(n, y), random_vec(n, z));
        let left = fiber.mul(&fiber.mul(&x, &y), &z);
        let right = fiber.mul(&x, &fiber.mul(&y, &z));
        prop_assert_eq!(left, right);
    }
    if let Some(d) = fiber.matrix_algebra_certificate().degree() {
        prop_assert_eq!(n, d * d);
    }
    Ok(())
}

pub fn fiber_associativity() -> Result<(), String> {
    let cases: Vec<CaseSpec> = catalog().into_iter().filter(|c| c.supports_fibers()).collect();
    for (i, case) in cases.iter().enumerate() {
        let entries = || prop::collection::vec((0usize..1000, -3i64..=3), 1..=4);
        let triple = (entries(), entries(), entries()).prop_map(|(x, y, z)| [x, y, z]);
        let budget = if case.id == CaseId::Iii && case.params.n == 3 { 2 } else { 4 };
        let built = Cell::new(0);
        run(budget, 50 + i as u8, (any::<u64>(), prop::collection::vec(triple, 5)), |(seed, triples)| {
            let Some(point) = sample_point(case, seed) else {
                return Ok(());
            };
            let fiber = ok(case.fiber(&point))?;
            built.set(built.get() + 1);
            check_fiber(&fiber, &triples)
        })
        .map_err(|e| format!("{}: {e}", case.label()))?;
        if built.get() == 0 {
            return Err(format!("{}: no admissible point sampled", case.label()));
        }
    }
    Ok(())
}

pub fn stabilizers_are_subgroups() -> Result<(), String> {
    let cases: Vec<CaseSpec> = catalog()
        .into_iter()
        .filter(|c| c.supports_fibers() && c.base_presentation.is_some())
        .collect();
    for (i, case) in cases.iter().enumerate() {
        let group = case.ring.group().clone();
        run(30, 70 + i as u8, (any::<u64>(), any::<bool>()), |(seed, fixed)| {
            let mut sampler = PointSampler::new(seed, case.conductor);
            let lift = if fixed {
                case.fixed_lifts(&sampler.value()).into_iter().next()
            } else {
                Some(sampler.pair())
            };
            let Some(base) = lift.and_then(|(a, b)| case.base_point_from_lift(&a, &b).ok()) else {
                return Ok(());
            };
            let stab: Vec<GroupElement> = ok(stabilizer_of_point(&base, &group))?;
            prop_assert!(stab.contains(&group.identity()));
            for &f in &stab {
                prop_assert!(stab.contains(&group.inverse(f)));
                for &h in &stab {
                    prop_assert!(stab.contains(&group.multiply(f, h)));
                }
            }
            Ok(())
        })
        .map_err(|e| format!("{}: {e}", case.label()))?;
    }
    Ok(())
}
