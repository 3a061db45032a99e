use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::matrix::IntegerMatrix;

type Row = Vec<(usize, u64)>;

fn reduce_entry(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let p = p as u128;
    let mut acc = 1u128;
    let mut base = b as u128 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u64
}

/// `target − factor·source` over `F_p`.
fn axpy(target: &Row, source: &Row, factor: u64, p: u64) -> Row {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    let neg = |x: u64| (p - (factor as u128 * x as u128 % p as u128) as u64) % p;
    while i < target.len() || j < source.len() {
        let ti = target.get(i).map_or(usize::MAX, |e| e.0);
        let sj = source.get(j).map_or(usize::MAX, |e| e.0);
        if ti < sj {
            out.push(target[i]);
            i += 1;
        } else if sj < ti {
            let v = neg(source[j].1);
            if v != 0 {
                out.push((sj, v));
            }
            j += 1;
        } else {
            let v = (target[i].1 + neg(source[j].1)) % p;
            if v != 0 {
                out.push((ti, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form over `F_p`: pivot column → row with leading entry 1.
fn echelon(m: &IntegerMatrix, p: u64) -> BTreeMap<usize, Row> {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    for i in 0..m.num_rows() {
        let mut v: Row = m
            .row(i)
            .iter()
            .map(|(j, x)| (*j, reduce_entry(x, p)))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(lead, coef)) = v.first() {
            match pivots.get(&lead) {
                Some(prow) => v = axpy(&v, prow, coef, p),
                None => {
                    let inv = inv_mod(coef, p);
                    let normalized = v.iter().map(|&(j, x)| (j, (x as u128 * inv as u128 % p as u128) as u64)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots
}

/// Rank of the matrix reduced mod `p`, by Gaussian elimination over `F_p`.
pub fn rank_mod_p(m: &IntegerMatrix, p: u64) -> usize {
    echelon(m, p).len()
}

/// The quotient `F_p^cols / rowspace(M mod p)` as an explicit linear map:
/// `images[j]` is the coordinate vector of the class of `e_j` in a basis
/// indexed by the non-pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPQuotient {
    pub prime: u64,
    pub dim: usize,
    pub images: Vec<Vec<u64>>,
}

pub fn mod_p_quotient(m: &IntegerMatrix, p: u64) -> ModPQuotient {
    let mut pivots = echelon(m, p);
    let cols = m.num_cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains_key(c)).collect();

    // back substitution, highest pivot first, leaves each pivot row with
    // its leading 1 and free-column entries only
    let keys: Vec<usize> = pivots.keys().rev().copied().collect();
    for &lead in &keys {
        let mut row = pivots[&lead].clone();
        let hits: Vec<(usize, u64)> =
            row.iter().filter(|(c, _)| *c != lead && pivots.contains_key(c)).copied().collect();
        for (c, coef) in hits {
            row = axpy(&row, &pivots[&c], coef, p);
        }
        pivots.insert(lead, row);
    }

    let mut images = vec![vec![0u64; free.len()]; cols];
    for (k, &f) in free.iter().enumerate() {
        images[f][k] = 1;
    }
    for (lead, row) in &pivots {
        for &(c, x) in row {
            if c != *lead {
                let k = free.binary_search(&c).expect("free column");
                images[*lead][k] = (p - x) % p;
            }
        }
    }
    ModPQuotient {
        prime: p,
        dim: free.len(),
        images,
    }
}
