//! Computational toolkit for torus-necklace link groups, J-braid
//! presentations and circular Garside groups.
//!
//! The crate builds braid words for torus necklaces and key-chain links,
//! computes link-group presentations from braid closures via the Artin
//! representation, solves the word problem in circular groups G(n,m)
//! through Garside normal forms, and mechanically verifies the explicit
//! homomorphisms relating the three families of groups.

pub mod arith;
pub mod braids;
pub mod builtin;
pub mod coset;
pub mod garside;
pub mod isomaps;
pub mod necklaces;
pub mod presentations;
pub mod snf;
pub mod words;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument that must be a positive integer was zero.
    NonPositive(&'static str),
    /// Two arguments that must be coprime are not.
    NotCoprime(u64, u64),
    /// Exact integer arithmetic overflowed.
    Overflow(&'static str),
    /// A word used a generator outside the expected alphabet.
    UnknownGenerator(String),
    /// A substitution had no image for a generator.
    MissingImage(String),
    /// A braid crossing index was outside [1, strands-1].
    BadCrossing { index: u32, strands: u32 },
    /// The removed-strand set is not stabilised by the braid permutation.
    NotStabilised,
    /// A strand position was outside [1, strands].
    BadStrand { position: u32, strands: u32 },
    /// Parameters violate a constructor's constraints.
    Param(String),
    /// Text input did not parse.
    Parse(String),
    /// A resource limit (coset table, ball size) was exceeded.
    LimitExceeded(&'static str),
    /// The requested check needs a word-problem solver the target lacks.
    UndecidableTarget,
    /// A renaming was not a bijection onto the target generators.
    NotBijective,
    /// The Garside lattice validation failed for these parameters.
    ValidationFailed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositive(what) => write!(f, "{what}: argument must be positive"),
            Error::NotCoprime(a, b) => write!(f, "{a} and {b} are not coprime"),
            Error::Overflow(what) => write!(f, "integer overflow in {what}"),
            Error::UnknownGenerator(g) => write!(f, "unknown generator {g}"),
            Error::MissingImage(g) => write!(f, "no image for generator {g}"),
            Error::BadCrossing { index, strands } => {
                write!(f, "crossing index {index} outside [1, {}]", strands - 1)
            }
            Error::NotStabilised => {
                write!(f, "removed set is not stabilised by the braid permutation")
            }
            Error::BadStrand { position, strands } => {
                write!(f, "strand position {position} outside [1, {strands}]")
            }
            Error::Param(msg) => write!(f, "{msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::LimitExceeded(what) => write!(f, "resource limit exceeded: {what}"),
            Error::UndecidableTarget => {
                write!(f, "target presentation has no word-problem solver")
            }
            Error::NotBijective => write!(f, "renaming is not a bijection"),
            Error::ValidationFailed(msg) => write!(f, "lattice validation failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
