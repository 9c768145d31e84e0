//! Lifting problems, weak factorization systems and model structures on
//! finite categories.
//!
//! The crate has two engines and an oracle that keeps them honest:
//!
//! * a *generic* engine ([`fincat`], [`lifting`], [`enumeration`]) that works
//!   from an explicit composition table and decides lifting properties by
//!   exhaustive search, enumerating all weak factorization systems and model
//!   structures on a [`fincat::FiniteCategory`];
//! * a *symbolic* engine ([`archetypes`]) over finitely many morphism
//!   archetypes, which reproduces the classification tables for sets, pointed
//!   sets and vector spaces without quantifying over all objects;
//! * an [`oracle`] that grinds through every small instance, verifies the
//!   symbolic lifting predicates, derives the composition/factorization
//!   tables the symbolic engine runs on, and brute-forces micro categories
//!   against the generic engine.
//!
//! [`quillen`] classifies the Quillen adjunctions and equivalences between
//! the model structures on sets, and [`catfile`]/[`tables`] define the two
//! on-disk formats (user categories and derived archetype tables).

pub mod archetypes;
pub mod catfile;
pub mod enumeration;
pub mod fincat;
pub mod lifting;
pub mod oracle;
pub mod quillen;
pub mod tables;

pub use archetypes::{ArchetypeClass, ArchetypeSystem, SystemKind};
pub use enumeration::{ModelStructure, Wfs};
pub use fincat::{FiniteCategory, MorId, MorphismClass, ObjId};
