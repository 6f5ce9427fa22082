//! Exact linear algebra over prime fields.

mod dense;
mod field;
mod sparse;

pub use dense::MatrixFp;
pub use field::{is_prime, Prime, DEFAULT_PRIME};
pub use sparse::{Echelon, Insertion, SparseVec};
