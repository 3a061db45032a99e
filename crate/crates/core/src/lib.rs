//! Finite-index filtrations of finitely presented groups.
//!
//! The crate builds nested sequences of finite-index subgroups term by term
//! and measures each term exactly: first Betti numbers over `Q` and `F_p`,
//! the torsion order of `H_1`, and an interval for the rank. Two families of
//! constructions are provided:
//!
//! * fast Betti growth for groups with an epimorphism onto a non-cyclic free
//!   group ([`filtrations::fast_betti_schedule`]),
//! * slow rank growth for mapping-torus groups `Z ⋉ G` with `G` a surface
//!   group ([`filtrations::slow_rank_schedule`]),
//!
//! together with normal-core normalization and exponent certificates.
//!
//! Subgroups are always carried as transitive coset actions
//! ([`coset_actions::CosetTable`]); presentations of subgroups come from
//! Reidemeister–Schreier rewriting ([`schreier`]) and homology from an exact
//! integer Smith normal form ([`homology`]).

pub mod coset_actions;
pub mod error;
pub mod filtrations;
pub mod homology;
pub mod presentations;
pub mod report;
pub mod schreier;

pub use error::{Error, Result};
