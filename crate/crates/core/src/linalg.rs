//! Sparse exact linear algebra over cyclotomic fields.

use std::collections::BTreeMap;

use crate::scalar::CyclotomicNumber;

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, CyclotomicNumber)>;

/// Builds a sparse vector from a dense one.
pub fn sparse_from_dense(v: &[CyclotomicNumber]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Dense copy of a sparse vector.
pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<CyclotomicNumber> {
    let mut out = vec![CyclotomicNumber::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `y + a·x`.
pub fn axpy(y: &SparseVec, a: &CyclotomicNumber, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let yi = y.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let xj = x.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if yi < xj {
            out.push(y[i].clone());
            i += 1;
        } else if xj < yi {
            out.push((xj, a * &x[j].1));
            j += 1;
        } else {
            let c = &y[i].1 + &(a * &x[j].1);
            if !c.is_zero() {
                out.push((yi, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a·x`.
pub fn scale(a: &CyclotomicNumber, x: &SparseVec) -> SparseVec {
    if a.is_zero() {
        return vec![];
    }
    x.iter().map(|(i, c)| (*i, a * c)).collect()
}

/// Accumulates sparse vectors through a map, dropping cancelled entries at the end.
#[derive(Default, Clone)]
pub struct Accumulator {
    entries: BTreeMap<usize, CyclotomicNumber>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(e) => *e += c,
            None => {
                self.entries.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, a: &CyclotomicNumber, x: &SparseVec) {
        for (i, c) in x {
            self.add(*i, &(a * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        self.entries.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// A subspace kept in fully reduced row echelon form.
#[derive(Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows of the reduced basis, keyed by pivot column.
    pub fn rows(&self) -> &BTreeMap<usize, SparseVec> {
        &self.rows
    }

    /// Remainder of `v` modulo the subspace; supported on non-pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in v {
            acc.add(*i, c);
        }
        for (i, c) in v {
            if let Some(row) = self.rows.get(i) {
                acc.add_scaled(&-c, row);
            }
        }
        acc.finish()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the subspace; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let r = scale(&inv, &r);
        for row in self.rows.values_mut() {
            if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                let c = row[k].1.clone();
                *row = axpy(row, &-c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Basis of `{x : row·x = 0 for every row}` inside a space of `ncols` coordinates.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v: SparseVec = vec![(f, CyclotomicNumber::one())];
            for (p, row) in &self.rows {
                if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                    v.push((*p, -&row[k].1));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Right kernel of a matrix given by sparse rows.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.kernel(ncols)
}

/// Rank of a dense matrix.
pub fn rank_dense(rows: &[Vec<CyclotomicNumber>]) -> usize {
    let sparse: Vec<SparseVec> = rows.iter().map(|r| sparse_from_dense(r)).collect();
    rank(&sparse)
}
