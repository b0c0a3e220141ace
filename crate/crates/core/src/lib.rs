//! Angular Kronecker constants of 2- and 3-element integer sets.
//!
//! For a finite set `S` of nonzero integers, `α(S)` is the largest distance
//! a target on the torus can sit from the orbit `{(n x)_{n∈S}}` in the
//! max-norm, and `κ(S) = 2 sin(π α(S))` is the angular Kronecker constant.
//! For 3-element sets `α` equals the largest value of a piecewise-linear
//! covering function over one cell of a plane lattice, which this crate
//! maximizes with certified and exact rational arithmetic.

pub mod bounds;
pub mod covering;
pub mod error;
pub mod harness;
pub mod numbers;
pub mod oracle;

pub use error::{KroneckerError, Result};
