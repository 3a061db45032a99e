use super::automorphism::GroupAutomorphism;
use super::free_quotient::FreeQuotient;
use super::presentation::{mk_free_group, mk_semidirect_z, mk_surface_group, FinitePresentation};
use super::word::Word;
use crate::error::{Error, Result};

pub const CATALOG_NAMES: &[&str] = &["free2", "free3", "surface_g2", "fig8", "trefoil", "surface_g2_twist"];

/// Fibering witness: the group is `Z ⋉_monodromy fiber`.
#[derive(Clone, Debug)]
pub struct Fibering {
    pub fiber: FinitePresentation,
    pub monodromy: GroupAutomorphism,
}

/// Values of `H_1` recorded with a catalog entry and re-checked in tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedHomology {
    pub b1: usize,
    pub torsion_order: u64,
}

/// A named group with optional largeness and fibering witnesses, supplied as
/// data.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: FinitePresentation,
    pub free_quotient: Option<FreeQuotient>,
    pub fibering: Option<Fibering>,
    pub expected: ExpectedHomology,
}

fn words(p: &FinitePresentation, ws: &[&str]) -> Vec<Word> {
    ws.iter().map(|s| p.parse_word(s).expect("catalog word")).collect()
}

/// Figure-eight knot monodromy `a ↦ ab, b ↦ a`.
pub fn figure_eight_monodromy() -> GroupAutomorphism {
    let f2 = mk_free_group(2).expect("rank 2");
    GroupAutomorphism::new(&f2, words(&f2, &["ab", "a"]), words(&f2, &["b", "Ba"])).expect("figure-eight monodromy")
}

/// Trefoil fiber monodromy `a ↦ b, b ↦ a⁻¹b`.
pub fn trefoil_monodromy() -> GroupAutomorphism {
    let f2 = mk_free_group(2).expect("rank 2");
    GroupAutomorphism::new(&f2, words(&f2, &["b", "Ab"]), words(&f2, &["aB", "a"])).expect("trefoil monodromy")
}

/// Dehn twist of the genus-2 surface group: `b ↦ ba`, other generators fixed.
pub fn genus_two_twist() -> GroupAutomorphism {
    let s2 = mk_surface_group(2, 0);
    GroupAutomorphism::new(&s2, words(&s2, &["a", "ba", "c", "d"]), words(&s2, &["a", "bA", "c", "d"]))
        .expect("genus-2 twist")
}

fn fibered(name: &str, fiber: FinitePresentation, monodromy: GroupAutomorphism, b1: usize) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        name: name.into(),
        presentation: mk_semidirect_z(&fiber, &monodromy)?,
        free_quotient: None,
        fibering: Some(Fibering { fiber, monodromy }),
        expected: ExpectedHomology { b1, torsion_order: 1 },
    })
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    let f2 = mk_free_group(2)?;
    match name {
        "free2" | "free3" => {
            let r = if name == "free2" { 2 } else { 3 };
            Ok(CatalogEntry {
                name: name.into(),
                presentation: mk_free_group(r)?,
                free_quotient: Some(FreeQuotient::identity(r)),
                fibering: None,
                expected: ExpectedHomology { b1: r, torsion_order: 1 },
            })
        }
        "surface_g2" => {
            let s2 = mk_surface_group(2, 0);
            let alpha = FreeQuotient::new(&s2, 2, words(&f2, &["a", "", "b", ""]))?;
            Ok(CatalogEntry {
                name: name.into(),
                presentation: s2,
                free_quotient: Some(alpha),
                fibering: None,
                expected: ExpectedHomology { b1: 4, torsion_order: 1 },
            })
        }
        "fig8" => fibered(name, f2, figure_eight_monodromy(), 1),
        "trefoil" => fibered(name, f2, trefoil_monodromy(), 1),
        "surface_g2_twist" => fibered(name, mk_surface_group(2, 0), genus_two_twist(), 4),
        other => Err(Error::UnknownCatalog(other.into())),
    }
}
