use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Largest dense block (rows × cols) handed to the dense phase.
pub const MAX_DENSE_ENTRIES: usize = 16_000_000;

/// Elementary divisors `d_1 | d_2 | … | d_k` of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    divisors: Vec<BigUint>,
}

impl SmithForm {
    pub fn divisors(&self) -> &[BigUint] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Divisors greater than one.
    pub fn torsion_invariants(&self) -> Vec<BigUint> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn torsion_order(&self) -> BigUint {
        self.divisors.iter().product()
    }

    pub fn free_rank(&self) -> usize {
        self.cols - self.rank()
    }
}

/// Smith normal form over `Z` with exact arithmetic.
///
/// Unit pivots are eliminated first on the sparse rows (Markowitz-style
/// choice to limit fill); whatever remains goes through a dense
/// smallest-pivot elimination.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SmithForm> {
    let (rows, cols) = (m.num_rows(), m.num_cols());
    let (units, residual) = eliminate_units(m.clone());

    let active_cols: BTreeSet<usize> = residual.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    let col_pos: Vec<usize> = active_cols.iter().copied().collect();
    if residual.len().saturating_mul(col_pos.len()) > MAX_DENSE_ENTRIES {
        return Err(Error::resource(
            format!("dense Smith form block {}x{}", residual.len(), col_pos.len()),
            MAX_DENSE_ENTRIES,
        ));
    }
    let dense: Vec<Vec<BigInt>> = residual
        .iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); col_pos.len()];
            for (j, x) in r {
                let k = col_pos.binary_search(j).expect("active column");
                d[k] = x.clone();
            }
            d
        })
        .collect();

    let mut divisors = vec![BigUint::one(); units];
    divisors.extend(dense_snf(dense).into_iter().map(|d| d.magnitude().clone()));
    debug_assert!(divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    Ok(SmithForm { rows, cols, divisors })
}

type SparseRow = Vec<(usize, BigInt)>;

/// `target -= factor * source` on sorted sparse rows.
fn axpy(target: &SparseRow, source: &SparseRow, factor: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let sj = source.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ti < sj {
            out.push(target[i].clone());
            i += 1;
        } else if sj < ti {
            out.push((sj, -(factor * &source[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - factor * &source[j].1;
            if !v.is_zero() {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates ±1 pivots; returns their count and the remaining nonzero rows.
fn eliminate_units(m: IntegerMatrix) -> (usize, Vec<SparseRow>) {
    let cols = m.num_cols();
    let mut rows: Vec<Option<SparseRow>> = m.into_rows().into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r.iter().flatten() {
            col_rows[*j].insert(i);
        }
    }

    let mut units = 0;
    loop {
        // pivot with the smallest (row length − 1)·(column count − 1)
        let mut best: Option<(usize, usize, usize)> = None;
        'scan: for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (j, x) in r {
                if x.magnitude().is_one() {
                    let score = (r.len() - 1) * (col_rows[*j].len() - 1);
                    if best.is_none_or(|b| score < b.0) {
                        best = Some((score, i, *j));
                        if score == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };

        let pivot_row = rows[pi].take().expect("live pivot row");
        let unit = pivot_row.iter().find(|e| e.0 == pj).map(|e| e.1.clone()).expect("pivot entry");
        for (j, _) in &pivot_row {
            col_rows[*j].remove(&pi);
        }
        let others: Vec<usize> = col_rows[pj].iter().copied().collect();
        for oi in others {
            let row = rows[oi].take().expect("live row");
            let a = row.iter().find(|e| e.0 == pj).map(|e| e.1.clone()).expect("entry in column");
            let factor = &a * &unit;
            let new_row = axpy(&row, &pivot_row, &factor);
            for (j, _) in &row {
                col_rows[*j].remove(&oi);
            }
            for (j, _) in &new_row {
                col_rows[*j].insert(oi);
            }
            rows[oi] = (!new_row.is_empty()).then_some(new_row);
        }
        units += 1;
    }
    (units, rows.into_iter().flatten().collect())
}

fn min_abs_in(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.magnitude() < a[bi][bj].magnitude()) {
                best = Some((i, j));
                if x.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Dense Smith form; returns the nonzero diagonal (positive, divisibility
/// chain).
pub(crate) fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_in(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                        *x -= &q * y;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let y = row[t].clone();
                        row[j] -= &q * y;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // bring the smallest leftover of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].magnitude() < a[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].magnitude() < a[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let pivot = a[t][t].clone();
            let bad = (t + 1..m).find(|&i| a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        let d = a[t][t].abs();
        debug_assert!(d.sign() == Sign::Plus);
        out.push(d);
    }
    out
}

/// Rank over `Q` by fraction-free (Bareiss) elimination; independent of the
/// Smith form path.
pub fn rank_over_q(m: &IntegerMatrix) -> usize {
    let mut a = m.to_dense();
    let rows = a.len();
    let cols = m.num_cols();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
