//! Exact and interval verification of binomial sums involving harmonic and
//! odd harmonic numbers.

pub mod constring;
pub mod expr;
pub mod registry;
pub mod verify;
pub mod error;
pub mod halfint;
pub mod psinterval;
pub mod ratcore;

pub use constring::{ConstExpr, Monomial};
pub use error::{Error, Result};
pub use psinterval::{IntervalValue, Precision};
pub use ratcore::{BinomialRule, HarmonicKind, Rational};
