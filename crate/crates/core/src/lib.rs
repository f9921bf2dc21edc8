//! Exact computation of the colored Jones polynomial, the Alexander
//! polynomial and the Kashaev invariant of knots presented as braid closures.
//!
//! The main engine ([`mcmahon`]) expands the inverse quantum determinant of a
//! deformed Burau matrix whose entries live in a q-Weyl type algebra
//! ([`qweyl`], [`deformed_burau`]). An independent R-matrix state sum
//! ([`verma_oracle`]) and a Fox-calculus pipeline ([`foxburau`]) serve as
//! cross-checks. Root-of-unity values and volume growth rates live in
//! [`kashaev`].

pub mod braid;
pub mod deformed_burau;
pub mod error;
pub mod exactpoly;
pub mod foxburau;
pub mod kashaev;
pub mod mcmahon;
pub mod qweyl;
pub mod verma_oracle;

pub use braid::{parse_braid, BraidWord, CorpusEntry, MarkovMove, Sign};
pub use error::{Error, Result};
pub use exactpoly::{CyclotomicInt, LaurentPoly, QExp};
