use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Sparse bivariate polynomial in `x`, `y` with big-integer coefficients.
/// Keys are `(x exponent, y exponent)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, BigInt)>>(terms: I) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_i64_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    /// Adds `c * x^i * y^j` in place.
    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * factor)))
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, j, c) in self.terms() {
            acc += Rational::from_integer(c.clone()) * pow_q(x, i) * pow_q(y, j);
        }
        acc
    }

    /// The univariate polynomial `T(t, 0)`.
    pub fn at_y_zero(&self) -> UniPoly {
        let deg = self.terms().filter(|t| t.1 == 0).map(|t| t.0 as usize).max();
        let Some(deg) = deg else {
            return UniPoly::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (i, j, c) in self.terms() {
            if j == 0 {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// Serialization as `[[i, j, "c"], ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.terms().map(|(i, j, c)| serde_json::json!([i, j, c.to_string()])).collect())
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [[i, j, \"c\"], ...], got {value}"));
        let items = value.as_array().ok_or_else(bad)?;
        let mut p = BiPoly::zero();
        for item in items {
            let triple = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let i = triple[0].as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(bad)?;
            let j = triple[1].as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(bad)?;
            let c = triple[2].as_str().and_then(|s| s.parse::<BigInt>().ok()).ok_or_else(bad)?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

fn pow_q(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: BiPoly) -> BiPoly {
        &self + &rhs
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        &self * &rhs
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first, x-heavy terms first within a degree
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(i, j, _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (idx, (i, j, c)) in terms.into_iter().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let mag = c.abs();
            if !mag.is_one() || (i == 0 && j == 0) {
                write!(f, "{mag}")?;
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    _ => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
