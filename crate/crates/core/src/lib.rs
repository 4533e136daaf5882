//! Exact q-hypergeometric series of genus-0 quantum K-theory of Grassmannians
//! and mechanical verification of their localization identities.
//!
//! - [`arith`]: rationals, Laurent polynomials, univariate rational functions in q
//! - [`kring`]: (equivariant) K-ring pairings, Gram matrices, recursion coefficients
//! - [`qseries`]: factored coefficients and the series constructors
//! - [`diffops`]: closed-form operator actions on truncated Novikov series
//! - [`localization`]: fixed-point specializations and identity checks
//! - [`mirror`]: Jackson q-integrals, difference systems and mirror critical points
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod diffops;
pub mod error;
pub mod kring;
pub mod localization;
pub mod mirror;
pub mod qseries;
pub mod report;
pub mod rng;

pub use arith::{BigRat, LaurentPoly, Mono, Monomial, RatFuncQ, UPoly, Var};
pub use error::{Error, Result};
pub use kring::{FixedPoint, GrassmannianCtx};
pub use qseries::{FactoredCoeff, NovikovSeries, QFactor, SeriesKind};


