//! Exact-arithmetic Gaudin models for the Lie superalgebra gl(1|1).
//!
//! The crate builds tensor products of evaluation modules, the commuting
//! Gaudin Hamiltonians and transfer matrices acting on them, solves the
//! Bethe ansatz equation by enumerating monic divisors of the master
//! polynomial, and verifies the full spectral picture (eigenvalues,
//! completeness, generalized eigenspace dimensions, Bethe-algebra structure,
//! and the pseudo-differential Berezinian identities) with exact rational or
//! Gaussian-rational arithmetic throughout. There is no floating point
//! anywhere.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod roots;
pub mod ratfunc;
pub mod multipoly;
pub mod qseries;
pub mod matrix;
pub mod linalg;
pub mod model;
pub mod repr;
pub mod gaudin;
pub mod bethe;
pub mod psdo;
pub mod weyl;
pub mod spectral;
pub mod report;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
pub use poly::Poly;
pub use ratfunc::RatFunc;
