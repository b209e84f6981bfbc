//! Effective upper bounds for the lowest nontrivial zero of Dedekind zeta
//! functions, with numerical verification of every constant that enters them
//! and direct computation of lowest critical-line zeros for ζ and quadratic
//! Dedekind zeta functions.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod explicit_formula;
pub mod fields;
pub mod lfunctions;
pub mod primes;
pub mod quad;
pub mod special;
pub mod sum;
pub mod testfn;
pub mod zeros;

pub use error::{Error, Result};
