use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{QksError, Result};
use crate::linalg::{axpy, rank, Accumulator, Echelon, SparseVec};
use crate::scalar::CyclotomicNumber;

/// A finite-dimensional associative algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FiniteDimAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    generators: Vec<SparseVec>,
}

/// Outcome of the central-simple test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    CentralSimple { degree: usize },
    NotCentralSimple { witness: Witness },
}

/// Which part of the central-simple test failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "test")]
pub enum Witness {
    DimensionNotSquare { dim: usize },
    DegenerateTraceForm { rank: usize, dim: usize },
    NontrivialCenter { center_dim: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DimensionNotSquare { dim } => write!(f, "dimension {dim} is not a square"),
            Witness::DegenerateTraceForm { rank, dim } => write!(f, "trace form rank {rank} < {dim}"),
            Witness::NontrivialCenter { center_dim } => write!(f, "center has dimension {center_dim}"),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::CentralSimple { degree } => write!(f, "CentralSimple({degree})"),
            Certificate::NotCentralSimple { witness } => write!(f, "NotCentralSimple({witness})"),
        }
    }
}

impl Certificate {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Certificate::CentralSimple { degree } => Some(*degree),
            Certificate::NotCentralSimple { .. } => None,
        }
    }
}

impl FiniteDimAlgebra {
    /// Builds an algebra from `table[i][j] = e_i e_j` and the unit vector.
    pub fn new(labels: Vec<String>, table: Vec<Vec<SparseVec>>, unit: SparseVec) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(QksError::InconsistentRecipe("the algebra is zero".into()));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim) {
            return Err(QksError::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        Ok(FiniteDimAlgebra {
            labels,
            table,
            unit,
            generators: vec![],
        })
    }

    /// Records a generating set used for centers and ideal closure.
    pub fn with_generators(mut self, generators: Vec<SparseVec>) -> Self {
        self.generators = generators;
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    /// Algebra generators; the full basis when none were recorded.
    pub fn generators(&self) -> Vec<SparseVec> {
        if self.generators.is_empty() {
            (0..self.dim()).map(|i| self.basis(i)).collect()
        } else {
            self.generators.clone()
        }
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        vec![(i, CyclotomicNumber::one())]
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(&(a * b), &self.table[*i][*j]);
            }
        }
        acc.finish()
    }

    fn check_triple(&self, x: &SparseVec, y: &SparseVec, z: &SparseVec) -> bool {
        self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z))
    }

    /// Associativity on every basis triple.
    pub fn is_associative_on_basis(&self) -> bool {
        let products = &self.table;
        for (i, row) in products.iter().enumerate() {
            for (j, ij) in row.iter().enumerate() {
                for (k, jk) in products[j].iter().enumerate() {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Associativity on random basis triples.
    pub fn is_associative_sampled<R: Rng>(&self, rng: &mut R, samples: usize) -> bool {
        let n = self.dim();
        (0..samples).all(|_| {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            self.check_triple(&self.basis(i), &self.basis(j), &self.basis(k))
        })
    }

    /// Whether the stored unit is a two-sided identity on the basis.
    pub fn is_unital(&self) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis(i);
            self.mul(&self.unit, &b) == b && self.mul(&b, &self.unit) == b
        })
    }

    /// Traces of left multiplication by each basis element.
    fn traces(&self) -> Vec<CyclotomicNumber> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut t = CyclotomicNumber::zero();
                for i in 0..n {
                    if let Ok(p) = self.table[k][i].binary_search_by_key(&i, |e| e.0) {
                        t += &self.table[k][i][p].1;
                    }
                }
                t
            })
            .collect()
    }

    fn trace_form_rows(&self) -> Vec<SparseVec> {
        let tr = self.traces();
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut row = vec![];
                for j in 0..n {
                    let mut b = CyclotomicNumber::zero();
                    for (k, c) in &self.table[i][j] {
                        if !tr[*k].is_zero() {
                            b += &(c * &tr[*k]);
                        }
                    }
                    if !b.is_zero() {
                        row.push((j, b));
                    }
                }
                row
            })
            .collect()
    }

    /// Rank of `(x, y) ↦ tr(L_{xy})`.
    pub fn trace_form_rank(&self) -> usize {
        rank(&self.trace_form_rows())
    }

    /// Basis of the kernel of the trace form, which is the Jacobson radical
    /// in characteristic zero.
    pub fn radical(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new();
        for r in self.trace_form_rows() {
            e.insert(&r);
        }
        e.kernel(self.dim())
    }

    pub fn jacobson_radical_dim(&self) -> usize {
        self.dim() - self.trace_form_rank()
    }

    /// Basis of `{x : xg = gx}` for every generator `g`.
    pub fn center(&self) -> Vec<SparseVec> {
        let mut space: Vec<SparseVec> = (0..self.dim()).map(|i| self.basis(i)).collect();
        for g in self.generators() {
            if space.is_empty() {
                break;
            }
            // columns: images of the current basis under x ↦ xg − gx
            let images: Vec<SparseVec> = space
                .iter()
                .map(|x| axpy(&self.mul(x, &g), &CyclotomicNumber::from_integer(-1), &self.mul(&g, x)))
                .collect();
            let mut rows: std::collections::BTreeMap<usize, SparseVec> = Default::default();
            for (col, img) in images.iter().enumerate() {
                for (r, c) in img {
                    rows.entry(*r).or_default().push((col, c.clone()));
                }
            }
            let matrix: Vec<SparseVec> = rows.into_values().collect();
            let kernel = crate::linalg::nullspace(&matrix, space.len());
            space = kernel
                .iter()
                .map(|k| {
                    let mut acc = Accumulator::new();
                    for (i, c) in k {
                        acc.add_scaled(c, &space[*i]);
                    }
                    acc.finish()
                })
                .collect();
        }
        space
    }

    pub fn center_dimension(&self) -> usize {
        self.center().len()
    }

    /// Smallest two-sided ideal containing the seeds.
    pub fn ideal_closure(&self, seeds: &[SparseVec]) -> Echelon {
        let gens = self.generators();
        let mut ideal = Echelon::new();
        let mut frontier: Vec<SparseVec> = vec![];
        for s in seeds {
            if ideal.insert(s) {
                frontier.push(s.clone());
            }
        }
        while let Some(w) = frontier.pop() {
            if ideal.rank() == self.dim() {
                break;
            }
            for g in &gens {
                for p in [self.mul(g, &w), self.mul(&w, g)] {
                    if ideal.insert(&p) {
                        frontier.push(p);
                    }
                }
            }
        }
        ideal
    }

    /// Quotient by a two-sided ideal given in reduced echelon form.
    pub fn quotient(&self, ideal: &Echelon) -> Result<FiniteDimAlgebra> {
        let pivots: std::collections::BTreeSet<usize> = ideal.pivots().collect();
        let keep: Vec<usize> = (0..self.dim()).filter(|i| !pivots.contains(i)).collect();
        if keep.is_empty() {
            return Err(QksError::InconsistentRecipe("the quotient collapses 1 to 0".into()));
        }
        let mut position = vec![usize::MAX; self.dim()];
        for (new, old) in keep.iter().enumerate() {
            position[*old] = new;
        }
        let project = |v: &SparseVec| -> SparseVec {
            let mut r: SparseVec = ideal
                .reduce(v)
                .into_iter()
                .map(|(i, c)| (position[i], c))
                .collect();
            r.sort_by_key(|e| e.0);
            r
        };
        let table = keep
            .iter()
            .map(|i| keep.iter().map(|j| project(&self.table[*i][*j])).collect())
            .collect();
        let labels = keep.iter().map(|i| self.labels[*i].clone()).collect();
        let unit = project(&self.unit);
        let gens = self.generators.iter().map(project).collect();
        Ok(FiniteDimAlgebra::new(labels, table, unit)?.with_generators(gens))
    }

    /// `F / rad F`.
    pub fn semisimple_quotient(&self) -> Result<FiniteDimAlgebra> {
        let mut e = Echelon::new();
        for r in self.radical() {
            e.insert(&r);
        }
        self.quotient(&e)
    }

    /// Central-simple test: `dim = d²`, nondegenerate trace form, and a
    /// one-dimensional center.
    pub fn matrix_algebra_certificate(&self) -> Certificate {
        let dim = self.dim();
        let d = (dim as f64).sqrt().round() as usize;
        if d * d != dim {
            return Certificate::NotCentralSimple {
                witness: Witness::DimensionNotSquare { dim },
            };
        }
        let r = self.trace_form_rank();
        if r < dim {
            return Certificate::NotCentralSimple {
                witness: Witness::DegenerateTraceForm { rank: r, dim },
            };
        }
        let c = self.center_dimension();
        if c != 1 {
            return Certificate::NotCentralSimple {
                witness: Witness::NontrivialCenter { center_dim: c },
            };
        }
        Certificate::CentralSimple { degree: d }
    }

    /// The matrix algebra `M_d` on the matrix units `E_ij`.
    pub fn matrix_units(d: usize) -> FiniteDimAlgebra {
        let idx = |i: usize, j: usize| i * d + j;
        let one = CyclotomicNumber::one();
        let mut table = vec![vec![vec![]; d * d]; d * d];
        let mut labels = vec![];
        for i in 0..d {
            for j in 0..d {
                labels.push(format!("E{i}{j}"));
                for l in 0..d {
                    table[idx(i, j)][idx(j, l)] = vec![(idx(i, l), one.clone())];
                }
            }
        }
        let unit = (0..d).map(|i| (idx(i, i), one.clone())).collect();
        FiniteDimAlgebra::new(labels, table, unit).expect("valid")
    }

    /// Truncated polynomial ring `k[t]/t^n`.
    pub fn truncated_polynomial(n: usize) -> FiniteDimAlgebra {
        let one = CyclotomicNumber::one();
        let mut table = vec![vec![vec![]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i + j < n {
                    *cell = vec![(i + j, one.clone())];
                }
            }
        }
        let labels = (0..n).map(|i| format!("t^{i}")).collect();
        FiniteDimAlgebra::new(labels, table, vec![(0, one)]).expect("valid")
    }

    /// Direct product `k^n`.
    pub fn diagonal(n: usize) -> FiniteDimAlgebra {
        let one = CyclotomicNumber::one();
        let mut table = vec![vec![vec![]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            row[i] = vec![(i, one.clone())];
        }
        let labels = (0..n).map(|i| format!("e{i}")).collect();
        let unit = (0..n).map(|i| (i, one.clone())).collect();
        FiniteDimAlgebra::new(labels, table, unit).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_invariants() {
        let m2 = FiniteDimAlgebra::matrix_units(2);
        assert!(m2.is_associative_on_basis());
        assert!(m2.is_unital());
        assert_eq!(m2.trace_form_rank(), 4);
        assert_eq!(m2.center_dimension(), 1);
        assert_eq!(m2.jacobson_radical_dim(), 0);
        assert_eq!(m2.matrix_algebra_certificate(), Certificate::CentralSimple { degree: 2 });
    }

    #[test]
    fn dual_numbers() {
        let d = FiniteDimAlgebra::truncated_polynomial(2);
        assert_eq!(d.trace_form_rank(), 1);
        assert_eq!(d.jacobson_radical_dim(), 1);
        assert_eq!(d.semisimple_quotient().unwrap().dim(), 1);
    }

    #[test]
    fn product_of_fields() {
        let k2 = FiniteDimAlgebra::diagonal(2);
        assert_eq!(k2.center_dimension(), 2);
        assert_eq!(
            k2.matrix_algebra_certificate(),
            Certificate::NotCentralSimple {
                witness: Witness::DimensionNotSquare { dim: 2 }
            }
        );
    }

    #[test]
    fn closure_of_a_matrix_unit_is_everything() {
        let m3 = FiniteDimAlgebra::matrix_units(3);
        let ideal = m3.ideal_closure(&[m3.basis(1)]);
        assert_eq!(ideal.rank(), 9);
        assert!(m3.quotient(&ideal).is_err());
    }
}
