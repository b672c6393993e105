//! Tutte polynomial, characteristic polynomial, Möbius invariant and the
//! Poincaré polynomial of the arrangement complement.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{BiPoly, UniPoly};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidKey};

/// Largest ground set accepted by [`tutte_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 24;

/// Tutte polynomial by deletion-contraction.
///
/// Loops and coloops are stripped first (factors `y` and `x`); the
/// recursion then branches on the smallest remaining element. Minors are
/// memoized by their canonical key.
pub fn tutte(m: &Matroid) -> BiPoly {
    let mut memo = HashMap::new();
    tutte_rec(m, &mut memo)
}

fn tutte_rec(m: &Matroid, memo: &mut HashMap<MatroidKey, BiPoly>) -> BiPoly {
    let key = m.key();
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let loops = m.loops();
    let coloops = m.coloops();
    let result = if !loops.is_empty() || !coloops.is_empty() {
        let (without_loops, labels) = m.restrict(m.ground_set().difference(loops));
        let coloops_after = coloops.compress(loops);
        debug_assert_eq!(coloops_after.expand(&labels), coloops);
        let (core, _) = without_loops.contract_set(coloops_after);
        tutte_rec(&core, memo).shift(coloops.len() as u32, loops.len() as u32)
    } else if m.n() == 0 {
        BiPoly::one()
    } else {
        let (deleted, _) = m.delete(1);
        let (contracted, _) = m.contract(1);
        &tutte_rec(&deleted, memo) + &tutte_rec(&contracted, memo)
    };
    memo.insert(key, result.clone());
    result
}

/// Tutte polynomial from the corank-nullity expansion
/// `sum_A (x-1)^(r - rk A) (y-1)^(|A| - rk A)`.
pub fn tutte_bruteforce(m: &Matroid) -> Result<BiPoly> {
    if m.n() > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { n: m.n(), limit: BRUTEFORCE_LIMIT });
    }
    let r = m.rank();
    // counts[i][j] = number of subsets with corank i and nullity j
    let mut counts = vec![vec![0u64; m.n() + 1]; r + 1];
    for a in m.ground_set().subsets() {
        let rk = m.rank_of(a);
        counts[r - rk][a.len() - rk] += 1;
    }
    let x_minus_1 = &BiPoly::x() + &BiPoly::monomial(-BigInt::one(), 0, 0);
    let y_minus_1 = &BiPoly::y() + &BiPoly::monomial(-BigInt::one(), 0, 0);
    let x_pows = powers(&x_minus_1, r);
    let y_pows = powers(&y_minus_1, m.n());
    let mut total = BiPoly::zero();
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                total = &total + &(&x_pows[i] * &y_pows[j]).scale(&BigInt::from(c));
            }
        }
    }
    Ok(total)
}

fn powers(base: &BiPoly, max: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::one()];
    for k in 0..max {
        out.push(&out[k] * base);
    }
    out
}

/// `chi_M(t) = (-1)^r T_M(1 - t, 0)`; zero when `M` has a loop.
pub fn char_poly(m: &Matroid) -> UniPoly {
    char_poly_from_tutte(&tutte(m), m.rank())
}

pub fn char_poly_from_tutte(t: &BiPoly, rank: usize) -> UniPoly {
    let chi = t.at_y_zero().substitute_one_minus();
    if rank % 2 == 1 {
        -&chi
    } else {
        chi
    }
}

/// `chi_M(t) = sum_F mu(∅, F) t^(r - rk F)` over the lattice of flats.
/// Independent of the Tutte route; used to cross-check it.
pub fn char_poly_from_flats(m: &Matroid) -> UniPoly {
    if !m.loops().is_empty() {
        return UniPoly::zero();
    }
    let lattice = m.flats();
    let r = m.rank();
    let mut coeffs = vec![BigInt::zero(); r + 1];
    for (idx, mu) in lattice.mobius_from_bottom().into_iter().enumerate() {
        coeffs[r - lattice.rank(idx)] += mu;
    }
    UniPoly::new(coeffs)
}

/// `mu(M) = chi_M(0)`, signed.
pub fn mobius_invariant(m: &Matroid) -> BigInt {
    char_poly(m).coeff(0)
}

/// `P(q) = (-q)^r chi_M(-1/q)`, the Poincaré polynomial of the complement
/// of the hyperplane arrangement cut out by the coordinates on `L`.
pub fn poincare_poly(m: &Matroid) -> Result<UniPoly> {
    if !m.loops().is_empty() {
        return Err(Error::UndefinedInput(format!(
            "Poincaré polynomial needs a loopless matroid; loops at {:?}",
            m.loops()
        )));
    }
    Ok(poincare_from_char_poly(&char_poly(m), m.rank()))
}

pub fn poincare_from_char_poly(chi: &UniPoly, rank: usize) -> UniPoly {
    // c_k t^k contributes c_k (-1)^(r+k) q^(r-k)
    let signed: Vec<BigInt> =
        chi.coeffs().iter().enumerate().map(|(k, c)| if (rank + k) % 2 == 1 { -c } else { c.clone() }).collect();
    UniPoly::new(signed).reversed(rank + 1)
}

/// The invariants of one matroid, computed from a single Tutte polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: usize,
    pub rank: usize,
    pub loops: ElementSet,
    pub tutte: BiPoly,
    pub charpoly: UniPoly,
    pub mobius: BigInt,
    /// `None` when the matroid has loops.
    pub poincare: Option<UniPoly>,
}

impl InvariantReport {
    pub fn compute(m: &Matroid) -> Self {
        let tutte = tutte(m);
        let charpoly = char_poly_from_tutte(&tutte, m.rank());
        let loops = m.loops();
        let poincare = loops.is_empty().then(|| poincare_from_char_poly(&charpoly, m.rank()));
        InvariantReport { n: m.n(), rank: m.rank(), loops, mobius: charpoly.coeff(0), tutte, charpoly, poincare }
    }

    /// Checks the report's internal identities.
    pub fn check(&self) -> Result<()> {
        if char_poly_from_tutte(&self.tutte, self.rank) != self.charpoly {
            return Err(Error::Consistency("charpoly differs from (-1)^r T(1-t, 0)".into()));
        }
        if self.mobius != self.charpoly.coeff(0) {
            return Err(Error::Consistency("mobius differs from charpoly(0)".into()));
        }
        if let Some(p) = &self.poincare {
            if p.coeffs().iter().any(Signed::is_negative) {
                return Err(Error::Consistency(format!("Poincaré polynomial {p} has a negative coefficient")));
            }
        }
        Ok(())
    }

    /// `{"n", "rank", "tutte", "charpoly", "mobius", "poincare"}`; the
    /// Poincaré polynomial is `null` for matroids with loops.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "rank": self.rank,
            "tutte": self.tutte.to_json(),
            "charpoly": self.charpoly.to_strings(),
            "mobius": self.mobius.to_string(),
            "poincare": self.poincare.as_ref().map(UniPoly::to_strings),
        })
    }
}
