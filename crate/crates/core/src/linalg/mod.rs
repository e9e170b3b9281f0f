//! Exact linear algebra over Z, Q and F_p.

mod complex;
mod field;
mod matrix;
mod ring;
mod snf;
mod subspace;

pub(crate) use complex::bigint_strings;
pub use complex::{ChainComplex, HomologyGroup};
pub use field::Echelon;
pub use matrix::Matrix;
pub use ring::{Ring, Scalar};
pub(crate) use ring::scalar_to_string;
pub use snf::{cokernel_summary, invariant_factors, snf, Snf};
pub use subspace::{Quotient, Subspace};
