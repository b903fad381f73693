//! Exact computations in DG commutative algebra over a field or a polynomial ring.

pub mod arith;
pub mod complex;
pub mod dg;
pub mod error;
pub mod io;
pub mod koszul;
pub mod moduli;
pub mod semifree;
pub mod structres;

pub use arith::*;
pub use error::{Error, Result};
