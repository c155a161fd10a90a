//! Factorization theory of monoids of zero-sum sequences over subsets of
//! the integers (and, through transfer maps, over finite cyclic groups).
//!
//! The library computes, at desk scale and in exact arithmetic:
//!
//! - complete atom catalogues and Davenport constants over finite ground
//!   sets ([`atoms`]);
//! - full factorization sets, sets of lengths, distance/Δ/elasticity
//!   statistics ([`factorize`]);
//! - catenary and monotone catenary degrees, successive distances, tame
//!   degrees, and explicit chain constructions ([`invariants`], [`chains`]);
//! - exact global elasticity through Hilbert bases of kernel-pair monoids
//!   ([`elasticity`], [`hilbert`]);
//! - transfer maps onto finite cyclic block monoids and the multiple-of-d
//!   collapse, with fidelity checks ([`transfer`]);
//! - almost-arithmetical-(multi)progression recognition and the explicit
//!   witness families used to separate the main finiteness properties
//!   ([`structure`]).
//!
//! Everything is deterministic: all enumerations return canonically sorted
//! results, and rational values are exact.

pub mod atoms;
pub mod budget;
pub mod chain;
pub mod chains;
pub mod elasticity;
pub mod error;
pub mod factorization;
pub mod factorize;
pub mod groundspec;
pub mod hilbert;
pub mod invariants;
pub mod lp;
pub mod sequence;
pub mod structure;
pub mod transfer;

pub use budget::Budget;
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use sequence::{Ambient, Sequence};
