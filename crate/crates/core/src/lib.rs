//! Exact subspace designs, local-profile threshold rates, and independence oracles
//! for maximally recoverable tensor codes.

pub mod cli;
pub mod codes;
pub mod designs;
pub mod error;
pub mod field;
pub mod integer;
pub mod io;
pub mod matrix;
pub mod mr;
pub mod ntheory;
pub mod poly;
pub mod profiles;
pub mod subspace;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FiniteField, Gf, Rationals};
pub use matrix::Matrix;
pub use subspace::Subspace;
