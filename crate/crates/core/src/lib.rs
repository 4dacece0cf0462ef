//! Exact integer engine for Turner doubles, generalized Schur algebras,
//! super wreath products and zigzag algebras.
//!
//! Everything is computed over ℤ with arbitrary precision. Rational and
//! modular arithmetic appear only where a statement needs a field (ranks,
//! commutant solves, determinants mod p).

pub mod combinatorics;
pub mod double;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod lattice;
pub mod lincomb;
pub mod quiver;
pub mod schur;
pub mod schurweyl;
pub mod superalgebra;
pub mod table_io;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lincomb::LinComb;


/// Integer scalars used throughout.
pub type Int = num_bigint::BigInt;

/// Rational scalars.
pub type Rat = num_rational::BigRational;
