//! Exact computation with derivations and E-derivations of associative
//! algebras over Q.

pub mod algebra;
pub mod arith;
pub mod calc;
pub mod error;
pub mod linalg;
pub mod polyext;
pub mod text;

pub use error::{Error, ErrorClass, Result};
