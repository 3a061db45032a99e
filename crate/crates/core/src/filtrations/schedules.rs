use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::certificate::{Check, CertificateRecord, GrowthCertificate, Mode};
use super::growth::{monotone_increasing_envelope, GrowthFunction};
use super::terms::{
    monodromy_permutation, permutation_order, Caps, Filtration, FiltrationTerm, Measures,
    SymbolicSemidirectTerm, TermSubgroup, Truncation,
};
use crate::coset_actions::{is_normal, meet, normal_core, subgroup_from_abelian_quotient, AbelianTargetMap, CosetTable};
use crate::error::{Error, Result};
use crate::homology::homology_summary;
use crate::presentations::{mk_semidirect_z, FinitePresentation, FreeQuotient, GroupAutomorphism};
use crate::schreier::{induce, rewrite_presentation, schreier_generators, Rewriting};

fn base_table<'a>(t: &'a FiltrationTerm, parent: &FinitePresentation) -> Result<&'a CosetTable> {
    let table = t
        .table()
        .ok_or_else(|| Error::Unsupported(format!("base term {} is symbolic", t.i)))?;
    if table.parent().as_ref() != parent {
        return Err(Error::Input(format!("base term {} lives in a different group", t.i)));
    }
    Ok(table)
}

fn rat(n: &BigUint) -> BigRational {
    BigRational::from_integer(n.clone().into())
}

/// Fast Betti growth for `Γ` with an epimorphism `α` onto a free group of
/// rank at least 2.
///
/// For each base term `G_i` of index `d_i`, `n_i` is the smallest multiple
/// of `n_{i−1}` with `g(n_i·d_i) < n_i`, and the term is
/// `G_i ∩ ker(Γ → Z/n_i)`, the map being the first free coordinate of `α`
/// reduced mod `n_i`. `g` is replaced by its monotone envelope first. The
/// certificate compares `b_1` of each term with `g` at its index.
pub fn fast_betti_schedule(
    gamma: &Arc<FinitePresentation>,
    alpha: &FreeQuotient,
    base: &Filtration,
    g: &GrowthFunction,
    terms: usize,
    primes: &[u64],
    caps: &Caps,
) -> Result<(Filtration, GrowthCertificate)> {
    FreeQuotient::new(gamma, alpha.rank(), alpha.images().to_vec())?;
    let g = monotone_increasing_envelope(g);
    let psi = alpha.first_coordinate();
    let mut out = Filtration::default();
    let mut prev_n = BigUint::one();
    for (i, base_term) in base.terms.iter().take(terms).enumerate().map(|(k, t)| (k + 1, t)) {
        let table = base_table(base_term, gamma)?;
        let d = BigUint::from(table.degree());
        // ker ψ_n already has index n, so n past the cap cannot fit
        let mut n = prev_n.clone();
        while g.cmp_at(&(&n * &d), &rat(&n)) != Ordering::Less {
            n += &prev_n;
            if n > BigUint::from(caps.max_index) {
                break;
            }
        }
        let n_small = match n.to_u64() {
            Some(x) if x <= caps.max_index as u64 => x,
            _ => {
                out.truncate(i, Error::resource(format!("modulus n_{i} ≥ {n}"), caps.max_index))?;
                break;
            }
        };
        let kernel = subgroup_from_abelian_quotient(gamma, &AbelianTargetMap::cyclic(n_small, psi.clone())?, caps.max_index)?;
        let term_table = match meet(table, &kernel, caps.max_index) {
            Ok(t) => t,
            Err(e) => {
                out.truncate(i, e)?;
                break;
            }
        };
        let total = BigUint::from(term_table.degree());
        out.terms.push(FiltrationTerm {
            i,
            subgroup: TermSubgroup::Table(term_table),
            d_i: d,
            n_i: n.clone(),
            total_index: total,
            measures: None,
        });
        prev_n = n;
    }
    if out.truncation.is_none() && out.terms.len() < terms {
        out.truncation = base.truncation.clone().or_else(|| {
            Some(Truncation {
                at_term: out.terms.len() + 1,
                reason: "base filtration has no further terms".into(),
            })
        });
    }
    out.measure(primes)?;
    out.check_chain()?;

    let mut cert = GrowthCertificate::new(Mode::LowerBound, None);
    for t in &out.terms {
        if g.cmp_at(&(&t.n_i * &t.d_i), &rat(&t.n_i)) != Ordering::Less {
            return Err(Error::Internal(format!("g(n_{0}·d_{0}) < n_{0} fails", t.i)));
        }
        let b1 = t.measures.as_ref().expect("measured").homology.b1;
        cert.records.push(CertificateRecord {
            i: t.i,
            check: Check::new(t.total_index.clone(), b1.into(), g.clone(), Mode::LowerBound),
            precondition: None,
        });
    }
    Ok((out, cert))
}

/// Bit length beyond which the search for `n_i` gives up.
const MAX_MODULUS_BITS: u64 = 1 << 16;

/// Smallest `n = step·k` (`k ≥ 1`) with `f(n·d) ≥ threshold`.
fn smallest_admissible(f: &GrowthFunction, step: &BigUint, d: &BigUint, threshold: &BigRational) -> Result<BigUint> {
    let ok = |k: &BigUint| f.cmp_at(&(step * k * d), threshold) != Ordering::Less;
    let none = || {
        Error::NoAdmissible(format!(
            "f(n·{d}) stays below {threshold} for every multiple n of {step} under 2^{MAX_MODULUS_BITS}"
        ))
    };
    if let GrowthFunction::Table(values) = f {
        // tables are constant past their end, so a finite scan decides
        let last = BigUint::from(values.len()).div_ceil(&(step * d)) + 1u32;
        let mut k = BigUint::one();
        while k <= last {
            if ok(&k) {
                return Ok(step * k);
            }
            k += 1u32;
        }
        return Err(none());
    }
    if !f.is_unbounded() {
        log::warn!("searching for a threshold crossing of a function without an unboundedness certificate");
    }
    // galloping on the exponent, then bisection; f is non-decreasing here
    let mut hi = BigUint::one();
    if ok(&hi) {
        return Ok(step.clone());
    }
    let mut lo = hi.clone();
    while !ok(&hi) {
        if hi.bits() > MAX_MODULUS_BITS {
            return Err(none());
        }
        lo = hi.clone();
        hi <<= hi.bits();
    }
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1u32;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(step * hi)
}

/// Slow rank growth for `Γ = Z ⋉_φ G` with `G` a surface group.
///
/// With `r = b_1(G)` and base terms `G_i` of index `d_i`, `n_i` is the
/// smallest multiple of `lcm(n_{i−1}, o_i)` with `f(n_i·d_i) ≥ 1 + d_i·r`,
/// where `o_i` is the order of the monodromy on `G_i\G` (so that
/// `n_i Z ⋉ G_i` is normal). Terms stay symbolic. The rank of a term is at
/// most `1 + d(G_i)`, and `d(G_i) = b_1(G_i)` for surface groups; the
/// certificate compares this with `f` at the term's index.
pub fn slow_rank_schedule(
    fiber: &Arc<FinitePresentation>,
    phi: &GroupAutomorphism,
    base: &Filtration,
    f: &GrowthFunction,
    terms: usize,
    primes: &[u64],
) -> Result<(Filtration, GrowthCertificate)> {
    if !fiber.is_surface_presentation() {
        return Err(Error::Input("fiber presentation is not a surface group presentation".into()));
    }
    let gamma = Arc::new(mk_semidirect_z(fiber, phi)?);
    let r = homology_summary(fiber, &[])?.b1;
    let f_search = monotone_increasing_envelope(f);
    let mut out = Filtration::default();
    let mut prev_n = BigUint::one();
    let mut cert = GrowthCertificate::new(Mode::UpperBound, None);
    for (i, base_term) in base.terms.iter().take(terms).enumerate().map(|(k, t)| (k + 1, t)) {
        let table = base_table(base_term, fiber)?;
        let d = BigUint::from(table.degree());
        let order = permutation_order(&monodromy_permutation(table, phi)?);
        let step = prev_n.lcm(&order);
        let threshold = BigRational::from_integer((&d * BigUint::from(r) + 1u32).into());
        let n = if matches!(f, GrowthFunction::Table(_)) {
            smallest_admissible(f, &step, &d, &threshold)?
        } else {
            smallest_admissible(&f_search, &step, &d, &threshold)?
        };
        if f.cmp_at(&(&n * &d), &threshold) == Ordering::Less {
            return Err(Error::Internal(format!("f(n_{i}·d_{i}) ≥ 1 + d_{i}·r fails")));
        }

        let fiber_p = rewrite_presentation(table);
        let homology = homology_summary(&fiber_p, primes)?;
        let (lo, hi) = crate::schreier::rank_interval(&fiber_p, &homology)?;
        // finite-index subgroups of surface groups are surface groups
        let fiber_rank = hi.min(homology.b1).max(lo);
        let rank_hi = 1 + fiber_rank;
        if BigUint::from(rank_hi) > &d * BigUint::from(r) + 1u32 {
            return Err(Error::Internal(format!("rank bound {rank_hi} exceeds 1 + d_{i}·r")));
        }
        let sym = SymbolicSemidirectTerm::new(gamma.clone(), table.clone(), phi, n.clone())?;
        let total = sym.total_index();
        cert.records.push(CertificateRecord {
            i,
            check: Check::new(total.clone(), rank_hi.into(), f.clone(), Mode::UpperBound),
            precondition: None,
        });
        out.terms.push(FiltrationTerm {
            i,
            subgroup: TermSubgroup::Symbolic(sym),
            d_i: d,
            n_i: n.clone(),
            total_index: total,
            measures: Some(Measures {
                homology,
                rank_lo: 1,
                rank_hi,
            }),
        });
        prev_n = n;
    }
    if out.terms.len() < terms {
        out.truncation = base.truncation.clone();
    }
    out.check_chain()?;
    Ok((out, cert))
}

/// Outcome of normalizing one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationCheck {
    pub i: usize,
    pub input_index: BigUint,
    pub output_index: BigUint,
    /// `k·(input index)^k`.
    pub bound: BigUint,
    pub normal: bool,
    pub contained: bool,
}

impl NormalizationCheck {
    pub fn holds(&self) -> bool {
        self.normal && self.contained && self.output_index <= self.bound
    }
}

/// Replaces each term `Γ_i ⊴ Γ` by its normal core in `π`, where `Γ ≤ π`
/// has index `k` and the terms live on the rewritten presentation of `Γ`
/// (`Rewriting::new(gamma)`). Terms must be normal in `Γ`.
pub fn normalize_schedule(
    gamma: &CosetTable,
    gamma_terms: &Filtration,
    primes: &[u64],
    caps: &Caps,
) -> Result<(Filtration, Vec<NormalizationCheck>)> {
    let rw = Rewriting::new(gamma);
    let k = gamma.degree();
    let mut out = Filtration::default();
    let mut checks = Vec::new();
    for t in &gamma_terms.terms {
        let table = match &t.subgroup {
            TermSubgroup::Table(h) => h.clone(),
            TermSubgroup::Symbolic(s) => s.materialize(caps.max_index).map_err(|_| {
                Error::Unsupported(format!(
                    "term {} is symbolic with index {}; normalization needs an explicit table",
                    t.i,
                    s.total_index()
                ))
            })?,
        };
        if table.parent().as_ref() != rw.presentation().as_ref() {
            return Err(Error::Input(format!("term {} is not a subgroup of the rewritten presentation", t.i)));
        }
        // the bound k·m^k counts k conjugates, which needs Γ_i normal in Γ
        if !is_normal(&table) {
            return Err(Error::Input(format!("term {} is not normal in Γ", t.i)));
        }
        let lifted = induce(&rw, &table, caps.max_index.saturating_mul(k))?;
        let core = match normal_core(&lifted, caps.max_image) {
            Ok(c) => c,
            Err(e) => {
                out.truncate(t.i, e)?;
                break;
            }
        };
        let input_index = BigUint::from(table.degree());
        let check = NormalizationCheck {
            i: t.i,
            bound: BigUint::from(k) * input_index.pow(k as u32),
            input_index,
            output_index: BigUint::from(core.degree()),
            normal: is_normal(&core),
            contained: schreier_generators(&core).iter().all(|s| lifted.contains_word(s)),
        };
        if !check.holds() {
            return Err(Error::Internal(format!("normalization of term {} violates {check:?}", t.i)));
        }
        checks.push(check);
        out.terms.push(FiltrationTerm {
            i: t.i,
            total_index: BigUint::from(core.degree()),
            subgroup: TermSubgroup::Table(core),
            d_i: t.d_i.clone(),
            n_i: t.n_i.clone(),
            measures: None,
        });
    }
    if out.truncation.is_none() {
        out.truncation = gamma_terms.truncation.clone();
    }
    out.measure(primes)?;
    Ok((out, checks))
}
