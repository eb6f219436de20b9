//! Closed-itemset mining and minimum-size bases of association rules.
//!
//! The crate mines the lattice of closed itemsets of a transaction dataset
//! and builds provably minimum-size rule bases on top of it:
//!
//! * representative rules (complete for plain redundancy),
//! * the Guigues-Duquenne and iteration-free implication bases,
//! * the `B*` basis of partial rules (complete for closure-based redundancy),
//!   with min-max / min-min generator variants and double-support mining.
//!
//! Alongside the constructions it ships executable deduction calculi for both
//! redundancy notions, deciders that match them, a two-premise entailment
//! decider, and verifiers that check completeness and minimality of any basis
//! against exhaustive rule enumeration.
//!
//! All confidence arithmetic is exact rational; nothing is compared through
//! floating point.

pub mod bases;
mod bits;
pub mod closure;
pub mod dataset;
pub mod entailment;
mod error;
pub mod fraction;
pub mod implications;
pub mod itemset;
pub mod redundancy;

pub use bases::{Basis, BasisKind};
pub use closure::{close, enumerate_closures, ClosedNode, ClosureLattice};
pub use dataset::{confidence, parse_transactions, support, Dataset};
pub use error::{Error, Result};
pub use fraction::Frac;
pub use implications::ImplicationSet;
pub use itemset::{ItemSet, Rule};
