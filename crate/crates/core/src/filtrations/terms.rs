use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coset_actions::{CosetTable, DEFAULT_MAX_IMAGE};
use crate::error::{Error, Result};
use crate::homology::{homology_summary, HomologySummary};
use crate::presentations::{FinitePresentation, GroupAutomorphism, Word};
use crate::schreier::{rank_interval, rewrite_presentation, schreier_generators, schreier_transversal};

/// Resource limits shared by all constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest coset table built.
    pub max_index: usize,
    /// Largest permutation group enumerated by normal cores.
    pub max_image: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_index: 100_000,
            max_image: DEFAULT_MAX_IMAGE,
        }
    }
}

/// `n Z ⋉ G_i` inside `Z ⋉ G`, kept symbolic: the `Z`-coordinate is only
/// tracked modulo `n`.
///
/// Cosets are pairs `(c, z)` with `c` a coset of `G_i` in `G` and `z ∈ Z/n`;
/// a fiber generator `h` sends `(c, z)` to `(c·h, z)` and the stable letter
/// sends it to `(Φ⁻¹(c), z + 1)`, where `Φ` is the monodromy acting on
/// `G_i\G`. This is consistent because the order of `Φ` divides `n`.
#[derive(Clone, Debug)]
pub struct SymbolicSemidirectTerm {
    gamma: Arc<FinitePresentation>,
    modulus: BigUint,
    fiber: CosetTable,
    phi: Vec<u32>,
    phi_inv: Vec<u32>,
    phi_order: BigUint,
}

/// The permutation `G_i x ↦ G_i φ(x)` of `G_i\G`, after checking that
/// `φ` and `φ⁻¹` preserve `G_i`.
pub fn monodromy_permutation(fiber: &CosetTable, phi: &GroupAutomorphism) -> Result<Vec<u32>> {
    if phi.arity() != fiber.num_generators() {
        return Err(Error::Input("monodromy and fiber have different generator counts".into()));
    }
    for s in schreier_generators(fiber) {
        if !fiber.contains_word(&phi.apply(&s)) || !fiber.contains_word(&phi.apply_inverse(&s)) {
            return Err(Error::Input("fiber subgroup is not invariant under the monodromy".into()));
        }
    }
    let t = schreier_transversal(fiber);
    let perm: Vec<u32> = t
        .representatives()
        .iter()
        .map(|w| fiber.trace(0, &phi.apply(w)) as u32)
        .collect();
    let mut seen = vec![false; perm.len()];
    for &x in &perm {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::Internal("monodromy does not permute the fiber cosets".into()));
        }
    }
    Ok(perm)
}

/// Order of a permutation: the lcm of its cycle lengths.
pub fn permutation_order(perm: &[u32]) -> BigUint {
    let mut seen = vec![false; perm.len()];
    let mut order = BigUint::one();
    for start in 0..perm.len() {
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        if len > 0 {
            order = order.lcm(&BigUint::from(len));
        }
    }
    order
}

impl SymbolicSemidirectTerm {
    /// `gamma` must be the semidirect product presentation of `fiber`'s
    /// parent with stable letter last.
    pub fn new(
        gamma: Arc<FinitePresentation>,
        fiber: CosetTable,
        phi: &GroupAutomorphism,
        modulus: BigUint,
    ) -> Result<Self> {
        if gamma.num_generators() != fiber.num_generators() + 1 {
            return Err(Error::Input("semidirect presentation must add exactly one stable letter".into()));
        }
        if modulus.is_zero() {
            return Err(Error::Input("modulus must be positive".into()));
        }
        let perm = monodromy_permutation(&fiber, phi)?;
        let phi_order = permutation_order(&perm);
        if !modulus.is_multiple_of(&phi_order) {
            return Err(Error::Input(format!(
                "modulus {modulus} is not a multiple of the monodromy order {phi_order} on the fiber cosets"
            )));
        }
        let mut phi_inv = vec![0u32; perm.len()];
        for (x, &y) in perm.iter().enumerate() {
            phi_inv[y as usize] = x as u32;
        }
        Ok(SymbolicSemidirectTerm {
            gamma,
            modulus,
            fiber,
            phi: perm,
            phi_inv,
            phi_order,
        })
    }

    pub fn gamma(&self) -> &Arc<FinitePresentation> {
        &self.gamma
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn fiber(&self) -> &CosetTable {
        &self.fiber
    }

    /// Order of the monodromy on `G_i\G`.
    pub fn monodromy_order(&self) -> &BigUint {
        &self.phi_order
    }

    pub fn total_index(&self) -> BigUint {
        &self.modulus * BigUint::from(self.fiber.degree())
    }

    /// Membership of a word over the semidirect presentation.
    pub fn contains_word(&self, w: &Word) -> bool {
        let stable = self.fiber.num_generators();
        let mut c = 0usize;
        let mut z: i128 = 0;
        for &l in w.letters() {
            if l.generator == stable {
                if l.inverse {
                    c = self.phi[c] as usize;
                    z -= 1;
                } else {
                    c = self.phi_inv[c] as usize;
                    z += 1;
                }
            } else {
                c = self.fiber.act(c, l);
            }
        }
        c == 0 && (BigUint::from(z.unsigned_abs()) % &self.modulus).is_zero()
    }

    /// Explicit coset table over the semidirect presentation, when its
    /// degree is at most `cap`.
    pub fn materialize(&self, cap: usize) -> Result<CosetTable> {
        let too_big = || Error::resource(format!("materialized degree {}", self.total_index()), cap);
        if self.total_index() > BigUint::from(cap) {
            return Err(too_big());
        }
        let n = self.modulus.to_u64().ok_or_else(too_big)?;
        let stable = self.fiber.num_generators();
        CosetTable::from_orbit(
            self.gamma.clone(),
            (0u32, 0u64),
            |&(c, z), g| {
                if g == stable {
                    (self.phi_inv[c as usize], (z + 1) % n)
                } else {
                    (self.fiber.generator_action(g)[c as usize], z)
                }
            },
            cap,
        )
    }
}

#[derive(Clone, Debug)]
pub enum TermSubgroup {
    Table(CosetTable),
    Symbolic(SymbolicSemidirectTerm),
}

/// Homology and rank data of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measures {
    pub homology: HomologySummary,
    pub rank_lo: usize,
    pub rank_hi: usize,
}

/// RS presentation, homology, and the rank interval of a table.
pub fn measure_table(h: &CosetTable, primes: &[u64]) -> Result<Measures> {
    let p = rewrite_presentation(h);
    let homology = homology_summary(&p, primes)?;
    let (rank_lo, rank_hi) = rank_interval(&p, &homology)?;
    Ok(Measures {
        homology,
        rank_lo,
        rank_hi,
    })
}

#[derive(Clone, Debug)]
pub struct FiltrationTerm {
    pub i: usize,
    pub subgroup: TermSubgroup,
    /// Index of the base term this one was built from.
    pub d_i: BigUint,
    /// Cyclic modulus chosen at this step (1 for base families).
    pub n_i: BigUint,
    pub total_index: BigUint,
    pub measures: Option<Measures>,
}

impl FiltrationTerm {
    pub fn from_table(i: usize, table: CosetTable) -> Self {
        let index = BigUint::from(table.degree());
        FiltrationTerm {
            i,
            subgroup: TermSubgroup::Table(table),
            d_i: index.clone(),
            n_i: BigUint::one(),
            total_index: index,
            measures: None,
        }
    }

    pub fn table(&self) -> Option<&CosetTable> {
        match &self.subgroup {
            TermSubgroup::Table(t) => Some(t),
            TermSubgroup::Symbolic(_) => None,
        }
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        match &self.subgroup {
            TermSubgroup::Table(t) => t.contains_word(w),
            TermSubgroup::Symbolic(s) => s.contains_word(w),
        }
    }
}

/// Why a construction stopped before the requested depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// First term that was not produced.
    pub at_term: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct Filtration {
    pub terms: Vec<FiltrationTerm>,
    pub truncation: Option<Truncation>,
}

impl Filtration {
    pub(crate) fn truncate(&mut self, at_term: usize, e: Error) -> Result<()> {
        match e {
            Error::Resource { .. } => {
                log::info!("stopping before term {at_term}: {e}");
                self.truncation = Some(Truncation {
                    at_term,
                    reason: e.to_string(),
                });
                Ok(())
            }
            other => Err(other),
        }
    }

    /// Fills in measures for every table term, in parallel.
    pub fn measure(&mut self, primes: &[u64]) -> Result<()> {
        self.terms
            .par_iter_mut()
            .filter(|t| t.measures.is_none())
            .try_for_each(|t| {
                if let TermSubgroup::Table(h) = &t.subgroup {
                    t.measures = Some(measure_table(h, primes)?);
                }
                Ok(())
            })
    }

    /// Checks that consecutive terms are nested, that the moduli form a
    /// divisibility chain and that `b_1` does not decrease along the chain.
    pub fn check_chain(&self) -> Result<()> {
        for pair in self.terms.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if !b.n_i.is_multiple_of(&a.n_i) {
                return Err(Error::Internal(format!("n_{} = {} does not divide n_{} = {}", a.i, a.n_i, b.i, b.n_i)));
            }
            let nested = match (&a.subgroup, &b.subgroup) {
                (TermSubgroup::Table(ta), TermSubgroup::Table(tb)) => {
                    schreier_generators(tb).iter().all(|s| ta.contains_word(s))
                }
                (TermSubgroup::Symbolic(sa), TermSubgroup::Symbolic(sb)) => {
                    schreier_generators(sb.fiber()).iter().all(|s| sa.fiber().contains_word(s))
                }
                _ => return Err(Error::Internal("mixed term representations".into())),
            };
            if !nested {
                return Err(Error::Internal(format!("term {} is not contained in term {}", b.i, a.i)));
            }
            if let (Some(ma), Some(mb)) = (&a.measures, &b.measures) {
                if mb.homology.b1 < ma.homology.b1 {
                    return Err(Error::Internal(format!(
                        "b1 drops from {} to {} between terms {} and {}",
                        ma.homology.b1, mb.homology.b1, a.i, b.i
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The first `i` with `w ∉ term_i`, if any.
pub fn excludes_word(terms: &[FiltrationTerm], w: &Word) -> Option<usize> {
    terms.iter().find(|t| !t.contains_word(w)).map(|t| t.i)
}
