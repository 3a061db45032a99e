//! Base filtrations, the growth schedules built on them and their
//! certificates.

mod base;
mod certificate;
mod growth;
mod schedules;
mod terms;

pub use base::{derived_p_filtration, sanov_congruence_filtration};
pub use certificate::{
    ambient_certificate, exponent_certificate, rescaled, CertificateRecord, Check, ExponentBound, ExponentInput,
    GrowthCertificate, Mode, Verdict,
};
pub use growth::{monotone_increasing_envelope, parse_rational, ratio_decreasing_envelope, GrowthFunction};
pub use schedules::{
    fast_betti_schedule, normalize_schedule, slow_rank_schedule, NormalizationCheck,
};
pub use terms::{
    excludes_word, measure_table, monodromy_permutation, permutation_order, Caps, Filtration, FiltrationTerm,
    Measures, SymbolicSemidirectTerm, TermSubgroup, Truncation,
};
