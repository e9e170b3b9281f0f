//! Exact homological algebra over the category of finitely generated free
//! groups: words and morphisms, bar resolutions, Tor computations, the
//! polynomial functor calculus and functor tensor products.

pub mod barres;
pub mod coend;
pub mod error;
pub mod functor;
pub mod torgr;
pub mod gcat;
pub mod linalg;
pub mod par;
pub mod suite;
pub mod word;

pub use error::{Error, Result};
pub use linalg::{ChainComplex, HomologyGroup, Matrix, Ring, Scalar};
pub use par::Execution;
pub use word::{FreeWord, GrMorphism};
