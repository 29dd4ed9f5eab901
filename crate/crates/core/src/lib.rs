//! Exact construction and verification of the twisted Laurent series
//! division algebra `D((x, σ̃))` over `Q((t))`.
//!
//! Layers, bottom up:
//!
//! * [`field_tower`]: `Q ⊂ K ⊂ L` with σ, φ and norms.
//! * [`algebra_d`]: the cyclic algebra `D`, the automorphism `σ̃`, the witness `d`.
//! * [`residue`]: finite-field evidence for ramification and inertia, and
//!   the root-of-unity residue model.
//! * [`twisted_laurent`]: truncated series in `D((x, σ̃))` and the x-adic valuation.
//! * [`verifier`]: the named-check registry behind the `skewverify` binary.

mod macros;

pub mod algebra_d;
pub mod constants;
pub mod error;
pub mod field_tower;
mod integral;
pub mod linalg;
pub mod rational;
pub mod residue;
pub mod ring;
pub mod twisted_laurent;
pub mod verifier;

pub use algebra_d::{check_relations, DElem, InnerWitness, OuterAut};
pub use constants::Constants;
pub use error::{AlgebraError, Result};
pub use field_tower::{KElem, LElem};
pub use rational::Rational;
