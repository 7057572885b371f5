//! Exact machinery for Turán exponents of powers of rooted trees.
//!
//! * [`rooted`], [`families`]: rooted graphs, densities, balancedness,
//!   powers, and the tree families `T(s,t,s')`.
//! * [`embeddings`]: embedding enumeration, ample embeddings, rooted
//!   subgraphs and extension sets.
//! * [`obstructions`]: obstruction families and the negligibility constants.
//! * [`exponent`]: mapping `2 - a/b` to tree parameters and the two
//!   parameter conditions.
//! * [`toolkit`]: sunflowers, the Kővári–Sós–Turán and dependent random
//!   choice bound checkers, and the degree-sandwich verifier.
//! * [`turan`]: exact Turán numbers for small `n`, with a JSONL cache and
//!   log-log exponent fits.

pub mod embeddings;
pub mod error;
pub mod exponent;
pub mod families;
pub mod graph;
pub mod matcher;
pub mod obstructions;
pub mod packing;
pub mod rational;
pub mod rooted;
pub mod sweep;
pub mod toolkit;
pub mod turan;

pub use error::{Error, Result};
pub use families::{make_catalog_tree, make_star, make_t, CatalogKind, FamilyParams};
pub use graph::{Graph, RootedGraph};
pub use rational::Rational;
