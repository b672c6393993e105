//! Exact maximum-likelihood degrees of diagonal linear concentration models.
//!
//! A diagonal model is a linear subspace `L` of `Q^n`; everything here is a
//! function of the column matroid of a matrix whose rows span `L`. The crate
//! computes Tutte and characteristic polynomials of that matroid, the
//! reciprocal ML degree `(-2)^r chi_M(1/2)`, the ML degree `|mu(M)|`, the
//! general score count `(-d)^r chi_M(1/d)`, and certifies those counts by
//! solving the score equations with an exact Gröbner basis computation.

pub mod arith;
pub mod elements;
pub mod error;
pub mod invariants;
pub mod io;
pub mod matroid;
pub mod mldegree;
pub mod random;
pub mod solver;
pub mod subspace;

pub use arith::{BiPoly, Rational, UniPoly};
pub use elements::ElementSet;
pub use error::{Error, Result};
pub use invariants::InvariantReport;
pub use matroid::{FlatLattice, Matroid};
pub use mldegree::MLDegreeReport;
pub use subspace::{QMatrix, Subspace};
