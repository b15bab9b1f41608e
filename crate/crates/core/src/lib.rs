//! Hierarchical coordinate systems for finite permutation groups.
//!
//! A subgroup chain `G = G₁ > G₂ > … > Gₙ` turns every element of `G` into a
//! tuple of coset coordinates, one per level, and every element acting on
//! those tuples into a cascade of per-level component actions whose values
//! depend only on the coordinates above. [`cascade::LagrangeDecomposition`]
//! builds the coordinate system; [`verify`] checks its algebraic claims
//! against brute-force oracles.
//!
//! Permutations act on the right and compose left to right: `p.then(&q)`
//! applies `p` first.

pub mod cascade;
pub mod chain;
pub mod coset;
mod error;
pub mod group;
pub mod io;
pub mod perm;
mod schreier;
pub mod verify;

pub use cascade::{
    CascadedPermutation, CascadedState, ComponentAction, DependencyTable, LagrangeDecomposition,
    TransitiveDecomposition,
};
pub use chain::{stabilizer_descent, validate_chain, ChainKind, ChainReport, SubgroupChain};
pub use coset::{FaithfulComponent, Transversal};
pub use error::{Error, ErrorKind, Result};
pub use group::PermGroup;
pub use perm::{compose, inverse, parse_cycles, Permutation};

/// Resource bounds for decomposition building.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest coset index allowed at any level.
    pub max_index: u128,
    /// Largest number of coordinate prefixes a dependency table may hold.
    pub max_table: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_index: 100_000,
            max_table: 100_000,
        }
    }
}
