//! Subsequence sums of sequences over finitely generated abelian groups.
//!
//! The crate computes `Σ(α)` and `Σ*(α)` exactly, runs the transfer operation
//! to a stable sequence, extracts and independently verifies structure
//! certificates `(h, a, P, X)` for zero-sum-free sequences with few
//! subsequence sums, checks the classical lower bounds on `|Σ(α)|`, and
//! computes Davenport constants of small groups by exhaustive search.

mod bits;
pub mod bounds;
pub mod davenport;
pub mod error;
pub mod families;
pub mod group;
pub mod limits;
pub mod oracle;
pub mod report;
pub mod sampling;
pub mod sequence;
pub mod structure;
pub mod sumset;
pub mod transfer;

pub use error::{Error, Result};
pub use group::{Element, GroupSpec, Order};
pub use limits::Limits;
pub use report::Check;
pub use sequence::{Entry, Sequence, SequenceStats};
pub use sumset::SumSet;
