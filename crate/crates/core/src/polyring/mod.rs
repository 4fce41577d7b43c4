//! Exact polynomial arithmetic.
//!
//! [`MPoly`] is the workhorse: rational coefficients, non-negative exponents in
//! the singularity variables `x` and the unfolding parameters `s`, and a signed
//! exponent for the spectral variable `z`. [`XPoly`] is a plain polynomial in
//! `x` over an arbitrary [`Field`]; the Gröbner engine works on it.

mod calculus;
mod field;
mod groebner;
mod mpoly;
mod parse;
mod ratfunc;
mod scalar;
mod weights;
mod xpoly;

pub use calculus::{hessian, partials};
pub use field::Field;
pub use groebner::{GroebnerBasis, Reduction};
pub use mpoly::{MPoly, Mono, Names};
pub use parse::parse_poly;
pub use ratfunc::RatFunc;
pub use scalar::{format_q, parse_q, q, qi, Q};
pub use weights::{STruncation, WeightSystem};
pub use xpoly::{Exps, XPoly};
