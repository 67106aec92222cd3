//! Exact linear algebra over prime fields.

mod field;
mod matrix;
mod poly;

pub use field::{Fp, DEFAULT_PRIME};
pub use matrix::{in_span, subspace_sum, Matrix, Span};
pub use poly::{minimal_polynomial, Poly};
