//! First homology of finitely presented groups: `b_1` over `Q` and `F_p`
//! and the torsion of `H_1(−; Z)`.

mod matrix;
mod modp;
mod snf;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentations::FinitePresentation;

pub use matrix::{abelianization_matrix, IntegerMatrix};
pub use modp::{mod_p_quotient, rank_mod_p, ModPQuotient};
pub use snf::{rank_over_q, smith_normal_form, SmithForm, MAX_DENSE_ENTRIES};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub b1: usize,
    pub torsion_order: BigUint,
    /// Elementary divisors greater than one.
    pub torsion_invariants: Vec<BigUint>,
    pub b1_mod: BTreeMap<u64, usize>,
}

impl HomologySummary {
    /// `b1_mod[p] − b1` must equal the number of torsion invariants divisible
    /// by `p`.
    pub fn check_universal_coefficients(&self) -> Result<()> {
        for (&p, &bp) in &self.b1_mod {
            let divisible = self
                .torsion_invariants
                .iter()
                .filter(|d| d.is_multiple_of(&BigUint::from(p)))
                .count();
            if bp < self.b1 || bp - self.b1 != divisible {
                return Err(Error::Internal(format!(
                    "b1 = {}, b1 mod {p} = {bp}, but {divisible} divisors divisible by {p}",
                    self.b1
                )));
            }
        }
        Ok(())
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `b_1` from the Smith form, `b_1` over each `F_p` from an independent
/// elimination mod `p`, and the two cross-checked.
pub fn homology_summary(p: &FinitePresentation, primes: &[u64]) -> Result<HomologySummary> {
    if let Some(&bad) = primes.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::Input(format!("{bad} is not prime")));
    }
    let m = abelianization_matrix(p);
    let snf = smith_normal_form(&m)?;
    let b1_mod = primes
        .iter()
        .map(|&q| (q, m.num_cols() - rank_mod_p(&m, q)))
        .collect();
    let summary = HomologySummary {
        b1: snf.free_rank(),
        torsion_order: snf.torsion_order(),
        torsion_invariants: snf.torsion_invariants(),
        b1_mod,
    };
    debug_assert!(summary.torsion_order >= BigUint::one());
    summary.check_universal_coefficients()?;
    Ok(summary)
}
