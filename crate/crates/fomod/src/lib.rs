//! Invariants, moduli points and field-of-moduli descent for rational maps
//! of the projective line of degree 2 and 3.
//!
//! A map `(F0, F1)` of degree `d` is encoded by the pair `(f, g)` of its
//! divergence and fixed-point form ([`forms`]). Transvectants of `f` and `g`
//! give the invariants ([`inv3`], [`inv2`]) whose weighted projective class is
//! the moduli point ([`moduli`]). [`reconstruct`] goes back: from a moduli
//! point with rational coordinates it builds a conic ([`conic`]) and, when that
//! conic has a rational point, a map with rational coefficients.

pub mod arith;
pub mod conic;
pub mod error;
pub mod field;
pub mod forms;
pub mod inv2;
pub mod inv3;
pub mod linalg;
pub mod moduli;
pub mod poly;
pub mod reconstruct;
pub mod sample;
pub mod selftest;

pub use error::{Error, Result};
