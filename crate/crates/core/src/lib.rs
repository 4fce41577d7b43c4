//! Exact BV-algebra calculus for quasihomogeneous isolated singularities.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyring`]: exact rationals, multivariate polynomials in `x`, `s`, `z`,
//!   generic polynomials over a field and Gröbner bases with cofactor tracking.
//! * [`jacobian`]: Milnor basis, normal forms, residue pairing and the
//!   regular-sequence decomposition.
//! * [`brieskorn`]: the topological trivialization and Brieskorn lattice reduction,
//!   central fiber and unfolding.
//! * [`goodbasis`]: good bases and the trivialization attached to them.
//! * [`primform`]: the primitive form recursion and its fixed-point oracle.
//! * [`frobenius`]: flat coordinates, structure constants, potential, Euler field.
//! * [`rmatrix`]: the inverse series of multiplication by `F`, and the R-matrix.
//! * [`cli`]: input files and the command dispatcher used by the binary.

#![allow(clippy::needless_range_loop)]

pub mod brieskorn;
pub mod cli;
pub mod error;
pub mod frobenius;
pub mod goodbasis;
pub mod jacobian;
pub mod linalg;
pub mod polyring;
pub mod primform;
pub mod rmatrix;

pub use error::{Error, Result};
pub use polyring::{MPoly, Mono, Names, Q};
