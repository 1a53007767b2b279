//! Augmented directed complexes with exact integer coefficients: orientals,
//! Gray tensor products and joins, enumeration of ν-cells and Street nerves,
//! truncated simplicial sets, and the slice constructions built on top.
//!
//! Everything is generic over the coefficient type `C: Coefficient`
//! (`i32`, `i64`, `i128` or `BigInt`). The aliases below fix the two common
//! choices.

pub mod acceptance;
pub mod antihomotopy;
pub mod chain;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod monoidal;
pub mod morphism;
pub mod orientals;
pub mod report;
pub mod scalar;
pub mod simplicial;
pub mod slice_transfer;

pub use num_bigint::BigInt;

pub use chain::{BasisRef, ChainElement};
pub use complex::AdcComplex;
pub use error::{AdcError, Result};
pub use morphism::{AdcMorphism, GradedMap};
pub use report::ValidationReport;
pub use scalar::Coefficient;

pub type IntComplex = AdcComplex<i64>;
pub type IntMorphism = AdcMorphism<i64>;
pub type IntChain = ChainElement<i64>;

pub type BigComplex = AdcComplex<BigInt>;
pub type BigMorphism = AdcMorphism<BigInt>;
pub type BigChain = ChainElement<BigInt>;
