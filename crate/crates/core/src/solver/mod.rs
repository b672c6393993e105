//! Algebraic certification of the score-count formula: the score equations
//! of a concrete subspace are solved exactly with a Gröbner basis and their
//! solutions counted, with multiplicity, as the dimension of the quotient
//! ring.

mod groebner;
mod poly;
mod system;

pub use groebner::{buchberger, GbLimits, GroebnerBasis};
pub use poly::{Monomial, Polynomial};
pub use system::{
    build_score_system, count_torus_solutions, oracle_score_count, random_generic_s, OracleConfig, PolySystem,
    SolveReport,
};
