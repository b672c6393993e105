use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};

/// Exponent vector; variable 0 is the smallest in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self / other`; requires `other | self`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable of a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (var, _) = nonzero.next()?;
        nonzero.next().is_none().then_some(var)
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (name, &e) in names.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

/// Graded reverse lexicographic order: higher degree first; on ties the
/// monomial with the smaller exponent in the smallest variable (index 0)
/// that differs is larger.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over `Q`, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn new(nvars: usize, mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: merged }
    }

    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::new(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::new(nvars, vec![(Monomial::var(nvars, var, 1), Rational::one())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        Self::new(self.nvars, self.terms.iter().map(|(t, a)| (t.times(m), a * c)).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        Self::new(self.nvars, self.terms.iter().chain(&other.terms).cloned().collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                terms.push((m.times(n), a * b));
            }
        }
        Self::new(self.nvars, terms)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Plain text such as `3*x1^2*t1 - 1/2*x2 + 1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            if m.is_one() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&m.format(names));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_order() {
        // variables listed smallest first: (z, y, x) with x > y > z
        // x^2 z  <  x y^2  in grevlex
        assert!(mono(&[1, 0, 2]) < mono(&[0, 2, 1]));
        // same degree, x > y > z
        assert!(mono(&[0, 0, 1]) > mono(&[0, 1, 0]));
        assert!(mono(&[0, 1, 0]) > mono(&[1, 0, 0]));
        assert!(mono(&[2, 0, 0]) > mono(&[0, 0, 1]));
    }

    #[test]
    fn monomial_ops() {
        let a = mono(&[2, 1, 0]);
        let b = mono(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), mono(&[2, 3, 0]));
        assert!(mono(&[1, 1, 0]).divides(&a));
        assert_eq!(a.quotient(&mono(&[1, 0, 0])), mono(&[1, 1, 0]));
        assert_eq!(mono(&[0, 4, 0]).pure_power_var(), Some(1));
        assert_eq!(a.pure_power_var(), None);
        assert_eq!(Monomial::one(3).pure_power_var(), None);
    }

    #[test]
    fn arithmetic_and_format() {
        let names: Vec<String> = ["x1", "t1"].iter().map(|s| s.to_string()).collect();
        let x = Polynomial::var(2, 0);
        let t = Polynomial::var(2, 1);
        let one = Polynomial::constant(2, Rational::one());
        let p = x.mul(&t).sub(&one);
        assert_eq!(p.format(&names), "x1*t1 - 1");
        let half = Rational::new(1.into(), 2.into());
        let q = x.pow(2).scale(&Rational::from_integer(3.into())).sub(&x.scale(&half));
        assert_eq!(q.format(&names), "3*x1^2 - 1/2*x1");
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.eval(&[Rational::from_integer(2.into()), half]), Rational::zero());
    }
}
