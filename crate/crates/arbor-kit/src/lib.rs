//! Exact finite-depth arboreal Galois data for unicritical polynomials
//! x^(p^n) + c over the rationals.
//!
//! The crate computes critical orbits and PCF certificates, splitting-field
//! towers and specialization profiles, iterated-wreath-product data with
//! brute-force Frattini oracles, Frobenius cycle-type samples, and the
//! finite criterion comparing |Gal(k'·K_{α,N}/Q)| against |G_N|·[k':k_1].
//!
//! Start with the runnable programs under `examples/`, or the `arbor` binary.

pub mod arboreal;
pub mod cache;
pub mod cli;
pub mod config;
pub mod criterion;
pub mod dynamics;
pub mod error;
pub mod factor;
pub mod fppoly;
pub mod qpoly;
pub mod rational;
pub mod selftest;
pub mod tower;
pub mod tree;
pub mod zassenhaus;

pub use error::{Error, Result};
pub use rational::Rational;
