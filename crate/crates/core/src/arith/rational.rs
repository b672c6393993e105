use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Parses `"-3"`, `"2/5"` or `"4/-6"` into canonical form.
///
/// Whitespace is rejected; the Unicode minus sign is accepted as a minus.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Value(format!("not a rational number: {s:?}"));
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let normalized = s.replace('\u{2212}', "-");
    let (num, den) = match normalized.split_once('/') {
        Some((n, d)) => (n, d),
        None => (normalized.as_str(), "1"),
    };
    let parse_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    let num = parse_int(num)?;
    let den = parse_int(den)?;
    if den.is_zero() {
        return Err(Error::Value(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"-3"` for integers, `"2/5"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Returns the integer value of `q`, or `None` if it is not integral.
pub fn rational_to_integer(q: &Rational) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

/// Binomial coefficient with the conventions `C(m, 0) = 1` for every `m`,
/// `C(m, k) = 0` for `k < 0` and for `0 <= m < k`; negative `m` uses the
/// extension `C(m, k) = (-1)^k C(k - m - 1, k)`.
pub fn binomial(m: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if m < 0 {
        let value = binomial(k - m - 1, k);
        return if k % 2 == 0 { value } else { -value };
    }
    if m < k {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}
