//! Reciprocal ML degree, ML degree and the general score count `D(L, d)`,
//! with the uniform-matroid closed forms, the deletion-contraction
//! recursion for `D`, the flat stratification identity, and the
//! classification of models with `rmld = 1`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, rational_to_integer, BiPoly, Rational, UniPoly};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::invariants::{char_poly, char_poly_from_tutte, mobius_invariant, tutte};
use crate::matroid::{Matroid, MatroidKey};

/// `rmld = (-2)^r chi_M(1/2)`; zero when `M` has a loop.
pub fn rmld(m: &Matroid) -> BigInt {
    rmld_from_char_poly(&char_poly(m), m.rank())
}

fn rmld_from_char_poly(chi: &UniPoly, rank: usize) -> BigInt {
    // (-2)^r sum_k c_k 2^-k = sum_k c_k (-1)^r 2^(r-k)
    let mut acc = BigInt::zero();
    for (k, c) in chi.coeffs().iter().enumerate() {
        acc += c << (rank - k);
    }
    if rank % 2 == 1 {
        -acc
    } else {
        acc
    }
}

/// `mld = |mu(M)| = |chi_M(0)|`; zero when `M` has a loop.
pub fn mld(m: &Matroid) -> BigInt {
    mobius_invariant(m).abs()
}

/// `D(L, d)`: for `d >= 1` the value `d^r T_M(1 - 1/d, 0)`, and for `d = 0`
/// the ML degree.
pub fn score_count(m: &Matroid, d: u32) -> Result<BigInt> {
    if d == 0 {
        return Ok(mld(m));
    }
    score_count_from_tutte(&tutte(m), m.rank(), d)
}

pub(crate) fn score_count_from_tutte(t: &BiPoly, rank: usize, d: u32) -> Result<BigInt> {
    debug_assert!(d >= 1);
    let dq = Rational::from_integer(d.into());
    let x = Rational::one() - dq.recip();
    let value = t.eval(&x, &Rational::zero()) * num_traits::pow(dq, rank);
    let int = rational_to_integer(&value)
        .ok_or_else(|| Error::Consistency(format!("d^r T(1 - 1/d, 0) = {value} is not an integer")))?;
    if int.is_negative() {
        return Err(Error::Consistency(format!("negative score count {int}")));
    }
    Ok(int)
}

/// `(-d)^r chi_M(1/d)`; equal to [`score_count`] for `d >= 1`.
pub fn score_count_from_char_poly(m: &Matroid, d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Domain("the characteristic-polynomial route needs d >= 1".into()));
    }
    let chi = char_poly(m);
    let dq = Rational::from_integer(d.into());
    let value = chi.eval(&dq.recip()) * num_traits::pow(-dq, m.rank());
    rational_to_integer(&value)
        .ok_or_else(|| Error::Consistency(format!("(-d)^r chi(1/d) = {value} is not an integer")))
}

/// `D(L, d)` by the deletion-contraction recursion on the smallest element:
/// 0 if it is a loop, `(d-1) D(M/e)` if a coloop, else `D(M\e) + d D(M/e)`,
/// with `D = 1` on the empty ground set.
pub fn score_count_dc(m: &Matroid, d: u32) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Domain("deletion-contraction for D(L, d) needs d >= 1".into()));
    }
    let mut memo = HashMap::new();
    Ok(score_dc_rec(m, &BigInt::from(d), &mut memo))
}

fn score_dc_rec(m: &Matroid, d: &BigInt, memo: &mut HashMap<MatroidKey, BigInt>) -> BigInt {
    if m.n() == 0 {
        return BigInt::one();
    }
    if !m.loops().is_empty() {
        return BigInt::zero();
    }
    let key = m.key();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let (contracted, _) = m.contract(1);
    let value = if m.is_coloop(1) {
        (d - 1) * score_dc_rec(&contracted, d, memo)
    } else {
        let (deleted, _) = m.delete(1);
        score_dc_rec(&deleted, d, memo) + d * score_dc_rec(&contracted, d, memo)
    };
    memo.insert(key, value.clone());
    value
}

fn check_uniform_params(n: usize, r: usize) -> Result<()> {
    if r < 1 || r > n {
        return Err(Error::Domain(format!("uniform matroid U_{{r,n}} needs 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// Tutte polynomial of `U_{r,n}`:
/// `sum_{i=1}^r C(n-i-1, r-i) x^i + sum_{j=1}^{n-r} C(n-j-1, r-1) y^j`.
pub fn uniform_tutte(n: usize, r: usize) -> Result<BiPoly> {
    check_uniform_params(n, r)?;
    let (ni, ri) = (n as i64, r as i64);
    let mut t = BiPoly::zero();
    for i in 1..=ri {
        t.add_term(i as u32, 0, binomial(ni - i - 1, ri - i));
    }
    for j in 1..=(ni - ri) {
        t.add_term(0, j as u32, binomial(ni - j - 1, ri - 1));
    }
    Ok(t)
}

/// `rmld` of a general `r`-dimensional model in `Q^n`:
/// `sum_{i=1}^r C(n-i-1, r-i) 2^(r-i)`.
pub fn uniform_rmld(n: usize, r: usize) -> Result<BigInt> {
    check_uniform_params(n, r)?;
    let (ni, ri) = (n as i64, r as i64);
    Ok((1..=ri).map(|i| binomial(ni - i - 1, ri - i) << (r - i as usize)).sum())
}

/// `D(L, d)` for a general `r`-dimensional model in `Q^n`.
pub fn uniform_score_count(n: usize, r: usize, d: u32) -> Result<BigInt> {
    let t = uniform_tutte(n, r)?;
    if d == 0 {
        let chi = char_poly_from_tutte(&t, r);
        return Ok(chi.coeff(0).abs());
    }
    score_count_from_tutte(&t, r, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Formula,
    DeletionContraction,
    Stratification,
    Solver,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::DeletionContraction => "deletion-contraction",
            Method::Stratification => "stratification",
            Method::Solver => "solver",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MLDegreeReport {
    pub d: u32,
    /// `D(L, d)`.
    pub value: BigInt,
    pub rmld: BigInt,
    pub mld: BigInt,
    pub method: Method,
}

impl MLDegreeReport {
    /// Report for `d` by the Tutte formula; fails if the formula for `D`
    /// disagrees with the deletion-contraction value (when `check_dc`).
    pub fn compute(m: &Matroid, d: u32, check_dc: bool) -> Result<Self> {
        let t = tutte(m);
        let r = m.rank();
        let chi = char_poly_from_tutte(&t, r);
        let mld = chi.coeff(0).abs();
        let rmld = rmld_from_char_poly(&chi, r);
        let value = if d == 0 { mld.clone() } else { score_count_from_tutte(&t, r, d)? };
        if check_dc && d >= 1 {
            let dc = score_count_dc(m, d)?;
            if dc != value {
                return Err(Error::Consistency(format!("D(L, {d}): formula {value}, deletion-contraction {dc}")));
            }
        }
        if !rmld.is_zero() && (&rmld % 2u32).is_zero() {
            return Err(Error::Consistency(format!("rmld {rmld} is even and nonzero")));
        }
        Ok(MLDegreeReport { d, value, rmld, mld, method: Method::Formula })
    }

    /// All fields as strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d.to_string(),
            "value": self.value.to_string(),
            "rmld": self.rmld.to_string(),
            "mld": self.mld.to_string(),
            "method": self.method.as_str(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatContribution {
    pub flat: ElementSet,
    /// Number of solutions supported exactly on `flat`'s coordinates.
    pub score: BigInt,
    /// `|mu(M/F)|`.
    pub mu_contract: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationReport {
    pub d: u32,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub per_flat: Vec<FlatContribution>,
}

impl StratificationReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_json(&self) -> serde_json::Value {
        let per_flat: Vec<serde_json::Value> = self
            .per_flat
            .iter()
            .map(|c| {
                serde_json::json!({
                    "flat": c.flat.to_vec(),
                    "D": c.score.to_string(),
                    "mu_contract": c.mu_contract.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "lhs": self.lhs.to_string(), "rhs": self.rhs.to_string(), "per_flat": per_flat })
    }
}

/// Both sides of `d^r |mu(M)| = sum_F D(L|F, d) |mu(M/F)|` over the flats
/// of a loopless `M`, each restriction count taken from the Tutte formula.
///
/// For `d = 0` the score equations are affine-linear and every solution
/// lies in the torus, so only the top flat carries solutions and the
/// identity reads `|mu(M)| = D(L, 0)`.
pub fn verify_stratification(m: &Matroid, d: u32) -> Result<StratificationReport> {
    if !m.loops().is_empty() {
        return Err(Error::UndefinedInput(format!(
            "stratification needs a loopless matroid; loops at {:?}",
            m.loops()
        )));
    }
    let mu = mld(m);
    let lattice = m.flats();
    if d == 0 {
        let top = lattice.flats()[lattice.top()];
        let score = mld(m);
        let contribution = FlatContribution { flat: top, score: score.clone(), mu_contract: BigInt::one() };
        return Ok(StratificationReport { d, lhs: mu, rhs: score, per_flat: vec![contribution] });
    }
    let lhs = BigInt::from(d).pow(m.rank() as u32) * &mu;
    let mut rhs = BigInt::zero();
    let mut per_flat = Vec::with_capacity(lattice.len());
    for &flat in lattice.flats() {
        let (restricted, _) = m.restrict(flat);
        let (contracted, _) = m.contract_set(flat);
        let score = score_count(&restricted, d)?;
        let mu_contract = mobius_invariant(&contracted).abs();
        rhs += &score * &mu_contract;
        per_flat.push(FlatContribution { flat, score, mu_contract });
    }
    Ok(StratificationReport { d, lhs, rhs, per_flat })
}

/// The four conditions characterizing models with `rmld = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RmldOneReport {
    pub rmld_is_one: bool,
    pub partition_matroid: bool,
    pub mld_is_one: bool,
    /// `chi_M(t) = (t - 1)^r`, the polynomial form of "`L^{-1}` is linear".
    pub char_poly_is_power: bool,
    pub rmld: BigInt,
    pub mld: BigInt,
}

impl RmldOneReport {
    pub fn value(&self) -> bool {
        self.rmld_is_one
    }
}

/// Evaluates all four conditions and fails if they disagree.
pub fn classify_rmld_one(m: &Matroid) -> Result<RmldOneReport> {
    let chi = char_poly(m);
    let r = m.rank();
    let rmld = rmld_from_char_poly(&chi, r);
    let mld = chi.coeff(0).abs();
    let power = UniPoly::from_i64(&[-1, 1]).pow(r as u32);
    let report = RmldOneReport {
        rmld_is_one: rmld.is_one(),
        partition_matroid: m.is_partition_matroid(),
        mld_is_one: mld.is_one(),
        char_poly_is_power: chi == power,
        rmld,
        mld,
    };
    let all = [report.rmld_is_one, report.partition_matroid, report.mld_is_one, report.char_poly_is_power];
    if all.iter().any(|&b| b != all[0]) {
        return Err(Error::Consistency(format!("rmld = 1 conditions disagree: {report:?}")));
    }
    Ok(report)
}
