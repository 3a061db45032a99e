use num_bigint::BigInt;
use num_traits::Zero;

use crate::presentations::FinitePresentation;

/// Sparse integer matrix, one sorted `(column, value)` list per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = IntegerMatrix::zeros(0, cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            m.push_row(r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, BigInt::from(x))).collect());
        }
        m
    }

    /// Appends a row given as `(column, value)` pairs; zero entries are
    /// dropped and duplicate columns summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, BigInt)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (j, x) in entries {
            assert!(j < self.cols, "column {j} out of range");
            match row.last_mut() {
                Some(last) if last.0 == j => last.1 += x,
                _ => row.push((j, x)),
            }
        }
        row.retain(|e| !e.1.is_zero());
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.rows[i]
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i]
            .binary_search_by_key(&j, |e| e.0)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.cols];
                for (j, x) in r {
                    d[*j] = x.clone();
                }
                d
            })
            .collect()
    }
}

/// Relation matrix of `H_1`: entry `(i, j)` is the exponent sum of generator
/// `j` in relator `i`.
pub fn abelianization_matrix(p: &FinitePresentation) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(0, p.num_generators());
    for r in p.relators() {
        let v = r.exponent_vector(p.num_generators());
        m.push_row(
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| *x != 0)
                .map(|(j, x)| (j, BigInt::from(x)))
                .collect(),
        );
    }
    m
}
