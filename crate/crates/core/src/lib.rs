//! Finite-field arithmetic and exhaustive verification of complete
//! permutation polynomial (CPP) families.

pub mod cyclotomic;
pub mod error;
pub mod families;
pub mod field;
pub mod ha;
pub mod niho;
pub mod nt;
pub mod oracle;

pub use error::{Error, Result};
pub use field::{Backend, Field, FieldElem, Poly};
