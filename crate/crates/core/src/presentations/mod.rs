//! Words, finite presentations, automorphisms and the group catalog.

mod automorphism;
mod catalog;
mod free_quotient;
mod presentation;
mod text;
mod tietze;
mod word;

pub use automorphism::{GroupAutomorphism, Verification};
pub use catalog::{
    catalog_entry, figure_eight_monodromy, genus_two_twist, trefoil_monodromy, CatalogEntry, ExpectedHomology,
    Fibering, CATALOG_NAMES,
};
pub use free_quotient::{FoldedGraph, FreeQuotient};
pub use presentation::{default_names, mk_free_group, mk_semidirect_z, mk_surface_group, FinitePresentation};
pub use text::{parse_presentation, to_text};
pub use tietze::tietze_reduce;
pub use word::{free_reduce, Letter, Word};
