use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Dense univariate polynomial with big-integer coefficients; index `k`
/// holds the coefficient of `t^k`. The highest stored coefficient is
/// nonzero, so the zero polynomial has no coefficients at all.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Exact value at a rational point (Horner).
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, at: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The composition `p(a + b t)` for integers `a`, `b`.
    pub fn compose_affine(&self, a: &BigInt, b: &BigInt) -> Self {
        let inner = UniPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// The substitution `t -> 1 - t`.
    pub fn substitute_one_minus(&self) -> Self {
        self.compose_affine(&BigInt::one(), &-BigInt::one())
    }

    /// The coefficient-reversed polynomial `t^deg * p(1/t)` padded to
    /// degree `len - 1`; requires `len > degree`.
    pub(crate) fn reversed(&self, len: usize) -> Self {
        assert!(self.coeffs.len() <= len);
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[len - 1 - k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Coefficients as canonical decimal strings, low to high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> crate::Result<Self> {
        let coeffs = items
            .iter()
            .map(|s| {
                s.as_ref()
                    .parse::<BigInt>()
                    .map_err(|_| crate::Error::Value(format!("not an integer: {:?}", s.as_ref())))
            })
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::new(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn eval_examples() {
        let chi = UniPoly::from_i64(&[2, -3, 1]);
        assert_eq!(chi.eval(&q(1, 2)), q(3, 4));
        assert_eq!(chi.eval(&q(0, 1)), q(2, 1));
        assert_eq!(UniPoly::zero().eval(&q(7, 3)), q(0, 1));
    }

    #[test]
    fn product_and_identity() {
        let a = UniPoly::from_i64(&[-1, 1]);
        let b = UniPoly::from_i64(&[-2, 1]);
        assert_eq!(&a * &b, UniPoly::from_i64(&[2, -3, 1]));
        assert_eq!(&a + &UniPoly::zero(), a);
        assert_eq!((&a - &a).degree(), None);
    }

    #[test]
    fn substitution_one_minus_t() {
        // (1-t)^2 + (1-t) = t^2 - 3t + 2
        let tutte_at_y0 = UniPoly::from_i64(&[0, 1, 1]);
        assert_eq!(tutte_at_y0.substitute_one_minus(), UniPoly::from_i64(&[2, -3, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_i64(&[2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(UniPoly::from_i64(&[-1]).to_string(), "-1");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(|c| UniPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn eval_is_ring_homomorphism(p in small_poly(), r in small_poly(), n in -9i64..9, d in 1i64..9) {
            let at = q(n, d);
            prop_assert_eq!((&p * &r).eval(&at), p.eval(&at) * r.eval(&at));
            prop_assert_eq!((&p + &r).eval(&at), p.eval(&at) + r.eval(&at));
        }

        #[test]
        fn one_minus_is_involution(p in small_poly()) {
            prop_assert_eq!(p.substitute_one_minus().substitute_one_minus(), p);
        }
    }
}
