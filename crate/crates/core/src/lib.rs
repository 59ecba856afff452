//! Exact computations with finite point sets in projective space: Hilbert
//! functions, the Cayley-Bacharach property, minimal plane configurations
//! and a randomized property-checking harness.

pub mod cbp;
pub mod cli;
pub mod cover;
pub mod error;
pub mod harness;
pub mod hilbert;
pub mod io;
pub mod projective;
pub mod qlinalg;

pub use error::{Error, Result};
