//! Exact minimal genus computations on the second homology of `Σ_g × T²`.
//!
//! Classes live in `Z^{4g+2}` with coordinates ordered as
//! `(T_{x_i y}, T_{z_i t}, T_{x_i t}, -T_{z_i y})` per handle, then `S`, then `-F`.
//! Everything here is pure integer arithmetic on arbitrary-precision values; the
//! crate is `no_std` and only needs `alloc`.
//!
//! Modules:
//! - [`homology`]: the coordinate lattice, its hyperbolic intersection form, and basic invariants.
//! - [`mapclass`]: automorphisms induced by Dehn twists, fiber shears and torus self-maps.
//! - [`normalform`]: reduction of a class to a normal form with a certifying move word.
//! - [`genus`]: the minimal genus function, the adjunction bound and complexity functions.
//! - [`twisted`]: the variant over a nontrivial circle bundle, with torsion fiber class.
//! - [`surfcalc`]: Euler characteristic bookkeeping that replays explicit surface constructions.
//! - [`autgroup`]: invariance checks, the exotic involution and bounded word search.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod autgroup;
pub mod error;
pub mod genus;
pub mod homology;
pub mod mapclass;
pub mod matrix;
pub mod normalform;
pub mod sample;
pub mod surfcalc;
pub mod twisted;

mod arith;

pub use error::{Error, Result};
pub use genus::{GenusCase, GenusResult, TensorFactorization};
pub use homology::{BasisKind, ClassH2, GenusContext};
pub use mapclass::{GeneratorMove, MoveKind, MoveWord};
pub use matrix::IntMatrix;
pub use normalform::NormalizationResult;

pub use num_bigint::BigInt;
