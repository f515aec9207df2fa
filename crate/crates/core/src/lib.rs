//! Exact computations for the finite similitude group `GSp(4, q)`.
//!
//! The crate builds the group over a small field, partitions it into
//! conjugacy classes, computes the complex character table exactly with the
//! Dixon–Schneider method, and evaluates the dimensions of Bessel-model
//! spaces `Hom_R(V, C_{chi,a,b,c})` and of the Fourier-coefficient spaces
//! `Hom_N(V, C_{a,b,c})` for every irreducible representation.
//!
//! Everything here is `no_std` with `alloc`; file formats, caching and the
//! command line live in the companion `gsp4` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bessel;
pub mod chartab;
pub mod conj;
mod error;
pub mod ffield;
pub mod gsp4;

pub use error::{Error, Result};
