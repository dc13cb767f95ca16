//! Exact arithmetic and verification kernels for cyclotomic and Kummer
//! extensions of prime conductor.

pub mod cyclo;
pub mod error;
pub mod fp;
pub mod ideal;
pub mod json;
pub mod kummer;
pub mod lattice;
pub mod ntheory;
pub mod poly;
pub mod stick;

pub use cyclo::{CyclotomicField, CyclotomicNumber, GaloisAutomorphism};
pub use error::{Error, Result};
