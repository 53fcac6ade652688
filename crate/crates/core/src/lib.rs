//! Cyclic codes over finite fields: construction from cyclotomic cosets,
//! minimum-distance lower bounds (BCH, Hartmann-Tzeng, Boston, and a bound
//! from periodic rational power series), and a key-equation decoder that
//! corrects up to half the rational bound.

pub mod error;
pub mod field;
pub mod numth;
pub mod code;
pub mod series;
pub mod bounds;
pub mod decoder;
pub mod harness;

pub use error::{Error, Result};
