//! Finite posets, their lattices of order ideals, the order and chain
//! polytopes, and the compatible algebras with straightening laws on `I(P)`.
//!
//! The main entry points:
//!
//! * [`Poset`] and [`build_poset`] for input;
//! * [`IdealLattice`] for `I(P)` with `∩`, `∪`, `∗` and `∘`;
//! * [`asl::check_condition_ii`], [`asl::check_unique`] and
//!   [`asl::search_compatible_asls`] for the straightening-law questions;
//! * [`enumerate::generate_posets`] and [`enumerate::corpus_verify`] for
//!   isomorph-free enumeration.

pub mod asl;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod polytope;
pub mod poset;
pub mod subset;

pub use asl::{
    check_condition_ii, check_unique, straightening_relations, CompatibleRelation, Monomial,
    PairMap, RealizationKind, Verdict,
};
pub use enumerate::{canonical_form, corpus_verify, generate_posets, CorpusOptions, CorpusReport};
pub use error::{Error, Result};
pub use lattice::{enumerate_ideals, Filter, IdealLattice, PosetIdeal};
pub use polytope::{chain_polytope_vertices, order_polytope_vertices, LatticePoint};
pub use poset::{build_poset, Chain, Poset, PosetFile};
pub use subset::Subset;
