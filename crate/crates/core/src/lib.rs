//! Exact combinatorics of 1-admissible root data: minuscule coweights, the
//! graded dominant monoids they cut out, Levi structures, characters of the
//! dual group and stratum dimension bookkeeping.
//!
//! Both lattices are `ℤ^N` with the dot-product pairing. All arithmetic is
//! exact.

pub mod admissible;
pub mod appendix;
pub mod builder;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod levi;
pub mod rep;
pub mod root_datum;
pub mod semigroup;
pub mod strata;

pub use admissible::{check_one_admissible, is_minuscule, AdmissibilityReport, AdmissibleDatum};
pub use error::{Error, Result};
pub use exec::Exec;
pub use rep::{Character, Decomposition, Partition, PowerKind, Reps};
pub use root_datum::{pair, AbelianQuotient, Coweight, DatumFile, RootDatum, Weight, WeylElement};
