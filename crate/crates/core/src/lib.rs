//! Exact Newton-polygon machinery over `Z[x]`: φ-expansions, residual
//! polynomials, Dedekind's criterion, Ore's index theorem and the detection
//! of prime common index divisors, with closed-form checkers for the
//! trinomials `x^5 + a x^2 + b` and two families of degree `p^r`.

pub mod error;
pub mod families;
pub mod ffield;
pub mod ore;
pub mod parse;
pub mod polygon;
pub mod quintic;
pub mod scan;
pub mod zx;

pub use error::{Error, Result};
