use std::collections::BTreeMap;

use crate::error::{QksError, Result};
use crate::linalg::{rank, SparseVec};
use crate::scalar::CyclotomicNumber;

use super::polynomial::PolynomialT;
use super::rational::RationalFunctionSeries;

type Cyclo = CyclotomicNumber;

/// Square matrix, row-major. Column `c` is the image of the `c`-th variable.
pub type Matrix = Vec<Vec<Cyclo>>;

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }).collect())
        .collect()
}

pub fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut s = Cyclo::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s += &(&a[i][k] * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn trace(a: &Matrix) -> Cyclo {
    let mut t = Cyclo::zero();
    for (i, row) in a.iter().enumerate() {
        t += &row[i];
    }
    t
}

/// `det(I − αt)` by the Faddeev–LeVerrier recurrence.
pub fn det_one_minus_t(a: &Matrix) -> PolynomialT {
    let n = a.len();
    // characteristic polynomial coefficients c_0 = 1, c_1, ..., c_n of
    // det(xI − α) = Σ c_k x^{n−k}; reversing gives det(I − αt) = Σ c_k t^k
    let mut coeffs = vec![Cyclo::one()];
    let mut m = vec![vec![Cyclo::zero(); n]; n];
    for k in 1..=n {
        let mut next = matrix_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[k - 1];
        }
        m = next;
        let am = matrix_mul(a, &m);
        let c = &trace(&am) * &Cyclo::from_ratio(-1, k as i64);
        coeffs.push(c);
    }
    PolynomialT::new(coeffs)
}

fn check_group(matrices: &[Matrix]) -> Result<usize> {
    let n = matrices
        .first()
        .map(|m| m.len())
        .ok_or_else(|| QksError::InvalidGroup("empty matrix list".into()))?;
    if matrices.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
        return Err(QksError::InvalidGroup("matrices must be square of one size".into()));
    }
    for a in matrices {
        for b in matrices {
            let ab = matrix_mul(a, b);
            if !matrices.contains(&ab) {
                return Err(QksError::NotClosed);
            }
        }
    }
    Ok(n)
}

/// `(1/|G|)·Σ 1/det(I − αt)` over a finite matrix group.
pub fn molien_series(matrices: &[Matrix]) -> Result<RationalFunctionSeries> {
    let n = check_group(matrices)?;
    let mut classes: Vec<(PolynomialT, i64)> = vec![];
    for a in matrices {
        let d = det_one_minus_t(a);
        if d.degree() != Some(n) && n > 0 {
            // the t^n coefficient is (−1)^n det α
            return Err(QksError::SingularMatrix);
        }
        match classes.iter_mut().find(|(p, _)| *p == d) {
            Some(entry) => entry.1 += 1,
            None => classes.push((d, 1)),
        }
    }
    let mut den = PolynomialT::one();
    for (p, _) in &classes {
        den = den.mul(p);
    }
    let mut num = PolynomialT::zero();
    for (i, (_, count)) in classes.iter().enumerate() {
        let others = PolynomialT::product(classes.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| &c.0));
        num = num.add(&others.scale(&Cyclo::from_integer(*count)));
    }
    let order = Cyclo::from_integer(matrices.len() as i64);
    RationalFunctionSeries::new(num, den.scale(&order))
}

type Monomial = Vec<u32>;
type CommPoly = BTreeMap<Monomial, Cyclo>;

fn comm_mul(a: &CommPoly, b: &CommPoly) -> CommPoly {
    let mut out = CommPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let e = out.entry(m).or_insert_with(Cyclo::zero);
            *e += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn generating_subset(matrices: &[Matrix]) -> Vec<Matrix> {
    let n = matrices[0].len();
    let mut gens: Vec<Matrix> = vec![];
    let mut subgroup = vec![identity_matrix(n)];
    for a in matrices {
        if subgroup.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let mut frontier = subgroup.clone();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = matrix_mul(&x, g);
                if !subgroup.contains(&y) {
                    subgroup.push(y.clone());
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Dimensions of the invariant subspaces of `k[x_1..x_n]_j` for `j ≤ d`,
/// computed as common fixed spaces of a generating set.
pub fn invariant_counts(matrices: &[Matrix], d: usize) -> Result<Vec<u64>> {
    let n = check_group(matrices)?;
    let gens = generating_subset(matrices);
    // images of the variables under each generator
    let var_images: Vec<Vec<CommPoly>> = gens
        .iter()
        .map(|g| {
            (0..n)
                .map(|c| {
                    let mut p = CommPoly::new();
                    for (r, row) in g.iter().enumerate() {
                        if !row[c].is_zero() {
                            let mut m = vec![0; n];
                            m[r] = 1;
                            p.insert(m, row[c].clone());
                        }
                    }
                    p
                })
                .collect()
        })
        .collect();
    let mut counts = vec![];
    let mut previous: Vec<BTreeMap<Monomial, CommPoly>> = vec![BTreeMap::new(); gens.len()];
    for j in 0..=d {
        let monos = monomials_of_degree(n, j as u32);
        let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut current: Vec<BTreeMap<Monomial, CommPoly>> = vec![];
        let mut rows: Vec<BTreeMap<usize, Cyclo>> = vec![];
        for (gi, images) in var_images.iter().enumerate() {
            let mut level = BTreeMap::new();
            let mut gen_rows: BTreeMap<usize, BTreeMap<usize, Cyclo>> = BTreeMap::new();
            for (col, m) in monos.iter().enumerate() {
                let image = if j == 0 {
                    CommPoly::from([(m.clone(), Cyclo::one())])
                } else {
                    let v = m.iter().position(|e| *e > 0).expect("positive degree");
                    let mut lower = m.clone();
                    lower[v] -= 1;
                    comm_mul(&previous[gi][&lower], &images[v])
                };
                for (mm, c) in &image {
                    let r = index[mm];
                    let e = gen_rows.entry(r).or_default().entry(col).or_insert_with(Cyclo::zero);
                    *e += c;
                }
                let e = gen_rows.entry(col).or_default().entry(col).or_insert_with(Cyclo::zero);
                *e -= &Cyclo::one();
                level.insert(m.clone(), image);
            }
            rows.extend(gen_rows.into_values());
            current.push(level);
        }
        let sparse: Vec<SparseVec> = rows
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        counts.push((monos.len() - rank(&sparse)) as u64);
        previous = current;
    }
    Ok(counts)
}

/// `1/(1−t)^n`.
pub fn trivial_closed_form(n: usize) -> RationalFunctionSeries {
    let f = PolynomialT::one_minus(Cyclo::one(), 1);
    RationalFunctionSeries::from_factors(&[], &vec![f; n]).expect("unit constant term")
}

/// `(1−t^{2m}) / ((1−t²)(1−t^m)²)`.
pub fn cyclic_closed_form(m: usize) -> RationalFunctionSeries {
    let om = |e| PolynomialT::one_minus(Cyclo::one(), e);
    RationalFunctionSeries::from_factors(&[om(2 * m)], &[om(2), om(m), om(m)]).expect("unit constant term")
}

/// `(1−t^{2(m+1)}) / ((1−t²)²(1−t^m)(1−t^{m+1}))`.
pub fn dihedral_closed_form(m: usize) -> RationalFunctionSeries {
    let om = |e| PolynomialT::one_minus(Cyclo::one(), e);
    RationalFunctionSeries::from_factors(&[om(2 * (m + 1))], &[om(2), om(2), om(m), om(m + 1)])
        .expect("unit constant term")
}
