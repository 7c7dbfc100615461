//! Atom sets of symmetric-subgroup orbit closures in the classical Weyl groups.
//!
//! The crate computes, for each classical symmetric pair, the weak order
//! graph on clans, the path-based atom sets with their multiplicities, and
//! the closed-form descriptions of the same sets through matchings, word
//! orders and generators. Independent brute-force routines cross-check the
//! two sides at small rank.

pub mod brion;
pub mod clans;
pub mod coxeter;
pub mod error;
pub mod matchings;
pub mod symfunc;
pub mod weak_order;
pub mod words;

pub use clans::{Clan, SymSpace};
pub use coxeter::{Automorphism, GeneratorIndex, NamedElement, WeylElement, WeylKind};
pub use error::{Error, Result};
pub use matchings::SignedMatching;
pub use symfunc::{IntPolynomial, StrictPartition};
pub use weak_order::OrbitGraph;
pub use words::WordOrder;
