//! Finite-index subgroups as transitive permutation actions on cosets.

mod abelian;
mod ops;
mod table;

pub use abelian::{subgroup_from_abelian_quotient, AbelianTargetMap};
pub use ops::{is_normal, meet, normal_core, DEFAULT_MAX_IMAGE};
pub use table::{CosetTable, TableDump};
