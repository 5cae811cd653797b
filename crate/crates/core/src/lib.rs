//! Exact equivariant quasi-polynomials for finite groups acting on ℤ^ℓ.

pub mod character;
pub mod cli;
pub mod cyclotomic;
pub mod dixon;
pub mod equivariant;
pub mod error;
pub mod group;
pub mod linalg;
pub mod numtheory;
pub mod oracle;
pub mod poly;
pub mod quasipoly;

pub use error::Error;
