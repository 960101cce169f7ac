//! Finite gyrogroups represented as Cayley tables.
//!
//! A gyrogroup is a magma with a left identity and left inverses whose
//! deviation from associativity is captured by a family of automorphisms
//! gyr[a,b] satisfying the gyroassociative law and the left loop property.
//! This crate verifies the axioms on candidate tables, builds new gyrogroups
//! of twice the order by a sign-rule doubling construction, analyzes
//! subgyrogroup structure (cosets, normality, conjugation, commutators,
//! the three-shape classification over doubled carriers), tests isomorphism,
//! and exhaustively enumerates gyrogroups of small order.

pub mod axioms;
pub mod catalog;
pub mod doubling;
pub mod error;
pub mod format;
pub mod gyrogroup;
pub mod iso;
pub mod perm;
pub mod search;
pub mod structure;
pub mod subset;

pub use axioms::{Axiom, AxiomCheck, RightCounterparts, VerificationReport};
pub use doubling::DoubledGyrogroup;
pub use error::{Error, ErrorKind, Result};
pub use format::TableFile;
pub use gyrogroup::{DeclaredGyr, FiniteGyrogroup, GyrationPool};
pub use iso::IsoResult;
pub use perm::Permutation;
pub use search::{SearchConfig, SearchResult, SearchStats};
pub use structure::{Shape, SubgyroClassification};
pub use subset::Subset;
