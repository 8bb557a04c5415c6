#![forbid(unsafe_code)]

//! Exact machinery for seed mutation on skew-symmetrizable exchange
//! matrices: Laurent-polynomial expansions of cluster variables, exchange
//! graph exploration, denominator and degree invariants, degree-pair search
//! along direction subsets, and the compatibility-degree calculus built on
//! top of them.

pub mod compat;
pub mod error;
pub mod explorer;
pub mod gpairs;
pub mod invariants;
pub mod laurent;
pub mod matrix;
pub mod seed;

pub use error::{Error, Result};
pub use laurent::{ExponentVector, LaurentPoly, TropicalMonomial};
pub use matrix::IntMatrix;
pub use seed::{find_skew_symmetrizer, mutate_matrix, seeds_equivalent, Mode, Seed, SkewSymmetrizer};
