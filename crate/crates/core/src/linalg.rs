//! Sparse exact linear algebra over a [`Field`].
//!
//! Matrices are stored column-major. The persistence reduction adds earlier
//! columns to later ones, so `V` is unit upper triangular and the result only
//! depends on the column order.

use std::collections::HashMap;
use std::fmt;

use crate::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        f.write_str("}")
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize, field: Field) -> Self {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    /// Builds a vector from unsorted entries, summing repeats and dropping zeros.
    pub fn from_entries(mut raw: Vec<(usize, Scalar)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); n];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    /// Largest index with a nonzero coefficient.
    pub fn low(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a == x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let s = &x[a].1 + &(c * &y[b].1);
                if !s.is_zero() {
                    out.push((x[a].0, s));
                }
                a += 1;
                b += 1;
            }
        }
        self.entries = out;
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, c * x)).collect(),
        }
    }

    /// Relabels indices through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries
                .iter()
                .filter_map(|(i, c)| f(*i).map(|j| (j, c.clone())))
                .collect(),
        )
    }

    pub fn dot(&self, other: &SparseVec, field: Field) -> Scalar {
        let mut acc = field.zero();
        for (i, c) in &self.entries {
            if let Some(d) = other.get(*i) {
                acc = &acc + &(c * d);
            }
        }
        acc
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub field: Field,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        SparseMatrix {
            rows,
            field,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        SparseMatrix {
            rows: n,
            field,
            columns: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_columns(rows: usize, field: Field, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.low().is_none_or(|l| l < rows)));
        SparseMatrix {
            rows,
            field,
            columns,
        }
    }

    /// Row-major dense integers, reduced into `field`.
    pub fn from_dense_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let columns = (0..nc)
            .map(|j| {
                SparseVec::from_entries(
                    (0..nr).map(|i| (i, field.from_i64(rows[i][j]))).collect(),
                )
            })
            .collect();
        SparseMatrix::from_columns(nr, field, columns)
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.columns[j]
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in x.iter() {
            out.add_scaled(c, &self.columns[*j]);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        SparseMatrix {
            rows: self.rows,
            field: self.field,
            columns: other.columns.iter().map(|c| self.mul_vec(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut raw: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                raw[*i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols(),
            field: self.field,
            columns: raw.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                out[*i][j] = c.clone();
            }
        }
        out
    }
}

/// Output of [`column_reduce`]: `R = M V` with distinct pivots.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub r: SparseMatrix,
    pub v: SparseMatrix,
    /// pivot row -> column of `R` whose lowest entry sits in that row
    pub pivot_col: HashMap<usize, usize>,
}

/// Standard persistence reduction: columns left to right, a conflict on the
/// lowest row is resolved by adding a multiple of the earlier reduced column.
pub fn column_reduce(m: &SparseMatrix) -> Reduction {
    let field = m.field;
    let n = m.cols();
    let mut r_cols: Vec<SparseVec> = Vec::with_capacity(n);
    let mut v_cols: Vec<SparseVec> = Vec::with_capacity(n);
    let mut pivot_col: HashMap<usize, usize> = HashMap::new();
    for j in 0..n {
        let mut r = m.columns[j].clone();
        let mut v = SparseVec::unit(j, field);
        while let Some(low) = r.low() {
            let Some(&k) = pivot_col.get(&low) else {
                break;
            };
            let lead = r_cols[k].get(low).expect("pivot entry");
            let c = -&(r.get(low).expect("low entry") * &lead.inv().expect("nonzero pivot"));
            r.add_scaled(&c, &r_cols[k]);
            v.add_scaled(&c, &v_cols[k]);
        }
        if let Some(low) = r.low() {
            pivot_col.insert(low, j);
        }
        r_cols.push(r);
        v_cols.push(v);
    }
    Reduction {
        r: SparseMatrix::from_columns(m.rows, field, r_cols),
        v: SparseMatrix::from_columns(n, field, v_cols),
        pivot_col,
    }
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivot_col.len()
    }

    /// Finds `x` with `M x = b`, or `None` when `b` is outside the column span.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut rest = b.clone();
        let mut x = SparseVec::new();
        while let Some(low) = rest.low() {
            let &k = self.pivot_col.get(&low)?;
            let lead = self.r.columns[k].get(low).expect("pivot entry");
            let c = rest.get(low).expect("low entry") * &lead.inv().expect("nonzero pivot");
            rest.add_scaled(&-&c, &self.r.columns[k]);
            x.add_scaled(&c, &self.v.columns[k]);
        }
        Some(x)
    }

    /// Basis of the null space: the `V` columns whose reduced column vanished.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.r
            .columns
            .iter()
            .zip(&self.v.columns)
            .filter(|(r, _)| r.is_zero())
            .map(|(_, v)| v.clone())
            .collect()
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    column_reduce(m).rank()
}

/// Solves `M x = b`; `None` means no solution.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    column_reduce(m).solve(b)
}

/// Dense Gaussian elimination, kept as an independent oracle for tests.
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut a: Vec<Vec<Scalar>> = rows.to_vec();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..nc {
        let Some(piv) = (rank..nr).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inv().expect("nonzero");
        for i in 0..nr {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] * &inv;
                for k in col..nc {
                    let t = &f * &a[rank][k];
                    a[i][k] = &a[i][k] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}
