use std::sync::Arc;

use super::terms::{Caps, Filtration, FiltrationTerm};
use crate::coset_actions::{subgroup_from_abelian_quotient, AbelianTargetMap, CosetTable};
use crate::error::{Error, Result};
use crate::homology::{abelianization_matrix, is_prime, mod_p_quotient};
use crate::presentations::{mk_free_group, FinitePresentation};
use crate::schreier::{induce, Rewriting};

/// Derived `p`-series: `G_1 = ker(P → H_1(P; F_p))` and
/// `G_{i+1} = ker(G_i → H_1(G_i; F_p))`. Each step rewrites the current
/// term, takes the mod-`p` abelian kernel and lifts it back to `P`.
///
/// Terms are characteristic, hence normal. The series is cofinal for free
/// and surface groups; other inputs are accepted but carry no such
/// guarantee.
pub fn derived_p_filtration(p: &Arc<FinitePresentation>, prime: u64, depth: usize, caps: &Caps) -> Result<Filtration> {
    if !is_prime(prime) {
        return Err(Error::Input(format!("{prime} is not prime")));
    }
    if !p.is_surface_presentation() {
        log::warn!("derived {prime}-series of a group that is neither free nor a surface group");
    }
    let mut out = Filtration::default();
    let mut current = CosetTable::trivial(p.clone());
    for i in 1..=depth {
        let rw = Rewriting::new(&current);
        let q = mod_p_quotient(&abelianization_matrix(rw.presentation()), prime);
        let growth = u32::try_from(q.dim)
            .ok()
            .and_then(|e| prime.checked_pow(e))
            .and_then(|g| g.checked_mul(current.degree() as u64));
        match growth {
            Some(next) if next <= caps.max_index as u64 => {}
            _ => {
                let reason = Error::resource(
                    format!("index {}·{prime}^{} of term {i}", current.degree(), q.dim),
                    caps.max_index,
                );
                out.truncate(i, reason)?;
                break;
            }
        }
        let images = q.images.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        let target = AbelianTargetMap::new(vec![prime; q.dim], images)?;
        let inner = subgroup_from_abelian_quotient(rw.presentation(), &target, caps.max_index)?;
        let next = induce(&rw, &inner, caps.max_index)?;
        out.terms.push(FiltrationTerm::from_table(i, next.clone()));
        current = next;
    }
    Ok(out)
}

type Mat = [u64; 4];

fn mat_mul(x: &Mat, y: &Mat, m: u64) -> Mat {
    let f = |a: u64, b: u64, c: u64, d: u64| ((a as u128 * b as u128 + c as u128 * d as u128) % m as u128) as u64;
    [
        f(x[0], y[0], x[1], y[2]),
        f(x[0], y[1], x[1], y[3]),
        f(x[2], y[0], x[3], y[2]),
        f(x[2], y[1], x[3], y[3]),
    ]
}

/// Images of the free generators in `SL_2(Z)`, reduced mod `m`: for rank 2
/// `a ↦ (1 2; 0 1)`, `b ↦ (1 0; 2 1)`; for rank `r > 2` the generator `x_j`
/// maps to the image of `a^j b a^{−j}`.
fn sanov_images(r: usize, m: u64) -> Vec<Mat> {
    let a = [1, 2 % m, 0, 1 % m];
    let a_inv = [1, (m - 2 % m) % m, 0, 1 % m];
    let b = [1, 0, 2 % m, 1 % m];
    if r == 2 {
        return vec![a, b];
    }
    let id = [1 % m, 0, 0, 1 % m];
    let (mut aj, mut aj_inv) = (id, id);
    (0..r)
        .map(|_| {
            let x = mat_mul(&mat_mul(&aj, &b, m), &aj_inv, m);
            aj = mat_mul(&aj, &a, m);
            aj_inv = mat_mul(&a_inv, &aj_inv, m);
            x
        })
        .collect()
}

/// Kernels of `F_r → SL_2(Z/m^i)` through the faithful rank-2
/// representation, for `i = 1..=depth`. Terms are normal and nested, and
/// their intersection is trivial because the representation is faithful.
pub fn sanov_congruence_filtration(r: usize, m: u64, depth: usize, caps: &Caps) -> Result<Filtration> {
    if r < 2 {
        return Err(Error::Input(format!("rank {r} < 2")));
    }
    if m < 2 {
        return Err(Error::Input(format!("modulus {m} < 2")));
    }
    let p = Arc::new(mk_free_group(r)?);
    let mut out = Filtration::default();
    for i in 1..=depth {
        let Some(modulus) = u32::try_from(i).ok().and_then(|e| m.checked_pow(e)) else {
            out.truncate(i, Error::resource(format!("modulus {m}^{i}"), u64::MAX))?;
            break;
        };
        let gens = sanov_images(r, modulus);
        let id = [1 % modulus, 0, 0, 1 % modulus];
        match CosetTable::from_orbit(p.clone(), id, |x, g| mat_mul(x, &gens[g], modulus), caps.max_index) {
            Ok(table) => out.terms.push(FiltrationTerm::from_table(i, table)),
            Err(e) => {
                out.truncate(i, e)?;
                break;
            }
        }
    }
    Ok(out)
}
