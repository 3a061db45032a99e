use std::sync::Arc;

use super::table::CosetTable;
use crate::error::{Error, Result};
use crate::presentations::{FinitePresentation, Word};

/// A homomorphism to `Z/m_1 × … × Z/m_s` (modulus 0 stands for `Z`), given
/// by the image vector of each generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianTargetMap {
    moduli: Vec<u64>,
    images: Vec<Vec<i64>>,
}

impl AbelianTargetMap {
    pub fn new(moduli: Vec<u64>, images: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(bad) = images.iter().find(|v| v.len() != moduli.len()) {
            return Err(Error::Input(format!(
                "image vector of length {} for {} moduli",
                bad.len(),
                moduli.len()
            )));
        }
        let images = images
            .into_iter()
            .map(|v| v.into_iter().zip(&moduli).map(|(x, &m)| reduce(x, m)).collect())
            .collect();
        Ok(AbelianTargetMap { moduli, images })
    }

    /// Map to `Z/n` with the given residues.
    pub fn cyclic(n: u64, residues: Vec<i64>) -> Result<Self> {
        AbelianTargetMap::new(vec![n], residues.into_iter().map(|x| vec![x]).collect())
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&m| m > 0)
    }

    pub fn image_of(&self, w: &Word) -> Vec<i64> {
        let mut acc = vec![0i64; self.moduli.len()];
        for l in w.letters() {
            for (k, a) in acc.iter_mut().enumerate() {
                *a = reduce(*a + l.sign() * self.images[l.generator][k], self.moduli[k]);
            }
        }
        acc
    }
}

fn reduce(x: i64, m: u64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

/// Coset table of `ker(t)`. Its degree is the order of the image of `t`.
pub fn subgroup_from_abelian_quotient(
    p: &Arc<FinitePresentation>,
    t: &AbelianTargetMap,
    cap: usize,
) -> Result<CosetTable> {
    if t.images.len() != p.num_generators() {
        return Err(Error::Input(format!(
            "{} image vectors for {} generators",
            t.images.len(),
            p.num_generators()
        )));
    }
    if !t.is_finite() {
        return Err(Error::Input("kernel of a map onto an infinite group has infinite index".into()));
    }
    if let Some(k) = p.relators().iter().position(|r| t.image_of(r).iter().any(|&x| x != 0)) {
        return Err(Error::InvalidQuotient { relator: k });
    }
    let moduli = t.moduli.clone();
    let images = t.images.clone();
    CosetTable::from_orbit(
        p.clone(),
        vec![0i64; moduli.len()],
        |v, g| {
            v.iter()
                .zip(&images[g])
                .zip(&moduli)
                .map(|((a, b), &m)| reduce(a + b, m))
                .collect()
        },
        cap,
    )
}
