//! Exact toolkit for factorial trinomial varieties
//! `V(T₀^{l₀} + T₁^{l₁} + T₂^{l₂}) ⊂ 𝔸ⁿ` with their maximal diagonal torus action.
//!
//! The pipeline goes trinomial → grading → polyhedral divisor → graded
//! dimensions, with derivation and brute-force oracles on the side.

pub mod error;
pub mod exec;
pub mod fixtures;
pub mod grading;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod polyhedral;
pub mod sample;
pub mod trinomial;

pub use error::Error;
pub use exec::Strategy;
pub use trinomial::{Trinomial, Variable};
