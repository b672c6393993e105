//! Exact rationals, dense univariate and sparse bivariate integer polynomials.

mod bipoly;
mod rational;
mod unipoly;

pub use bipoly::BiPoly;
pub use rational::{binomial, format_rational, parse_rational, rational_to_integer, Rational};
pub use unipoly::UniPoly;
