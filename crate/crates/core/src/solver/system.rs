//! The score system of a subspace, solution counting, and the end-to-end
//! certification run against the combinatorial prediction.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use super::groebner::{buchberger, GbLimits, GroebnerBasis};
use super::poly::{Monomial, Polynomial};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::mldegree::score_count;
use crate::random::rng_from_seed;
use crate::subspace::Subspace;

/// Polynomial system in variables `x1..xn, t1..tr` (in increasing
/// precedence): `n` membership equations `x_i * l_i(t) - 1` followed by `r`
/// orthogonality equations `sum_i A[j][i] (s_i x_i^d - x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub n: usize,
    pub r: usize,
    pub d: u32,
    pub s: Vec<Rational>,
    pub equations: Vec<Polynomial>,
}

impl PolySystem {
    pub fn num_vars(&self) -> usize {
        self.n + self.r
    }

    pub fn variable_names(&self) -> Vec<String> {
        variable_names(self.n, self.r)
    }

    /// One equation per line.
    pub fn to_text(&self) -> String {
        let names = self.variable_names();
        self.equations.iter().map(|p| p.format(&names) + "\n").collect()
    }
}

fn variable_names(n: usize, r: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).chain((1..=r).map(|j| format!("t{j}"))).collect()
}

/// The score system for `space` (parametrized by its reduced row echelon
/// basis), weights `s` and exponent `d`.
pub fn build_score_system(space: &Subspace, s: &[Rational], d: u32) -> Result<PolySystem> {
    let (n, r) = (space.ambient_dim(), space.dim());
    if r == 0 {
        return Err(Error::Domain("the score system needs a subspace of dimension >= 1".into()));
    }
    if d == 0 {
        return Err(Error::Domain("the score system needs d >= 1".into()));
    }
    if s.len() != n {
        return Err(Error::Domain(format!("expected {n} weights, got {}", s.len())));
    }
    let a = space.basis();
    let nv = n + r;
    let x = |i: usize| Monomial::var(nv, i, 1);
    let mut equations = Vec::with_capacity(nv);
    for i in 0..n {
        let mut terms: Vec<(Monomial, Rational)> =
            (0..r).map(|j| (x(i).times(&Monomial::var(nv, n + j, 1)), a.get(j, i).clone())).collect();
        terms.push((Monomial::one(nv), -Rational::one()));
        equations.push(Polynomial::new(nv, terms));
    }
    for j in 0..r {
        let mut terms = Vec::with_capacity(2 * n);
        for (i, si) in s.iter().enumerate() {
            let aji = a.get(j, i);
            if aji.is_zero() {
                continue;
            }
            terms.push((Monomial::var(nv, i, d), aji * si));
            terms.push((x(i), -aji.clone()));
        }
        equations.push(Polynomial::new(nv, terms));
    }
    Ok(PolySystem { n, r, d, s: s.to_vec(), equations })
}

/// `n` integers drawn uniformly from `[1, bound]`, deterministic in `seed`.
pub fn random_generic_s(n: usize, seed: u64, bound: u64) -> Result<Vec<Rational>> {
    if bound < 1000 {
        return Err(Error::Domain(format!("weight bound must be at least 1000, got {bound}")));
    }
    let mut rng = rng_from_seed(seed);
    Ok((0..n).map(|_| Rational::from_integer(rng.gen_range(1..=bound).into())).collect())
}

/// Dimension of the quotient ring by the ideal of `gb`, i.e. the number of
/// standard monomials. The unit ideal gives 0.
pub fn count_torus_solutions(gb: &GroebnerBasis) -> Result<BigInt> {
    if gb.is_unit_ideal() {
        return Ok(BigInt::zero());
    }
    let nv = gb.nvars();
    let leads = gb.leading_monomials();
    let mut bounds = vec![None; nv];
    for m in &leads {
        if let Some(v) = m.pure_power_var() {
            let e = m.exponents()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    if let Some(v) = bounds.iter().position(Option::is_none) {
        return Err(Error::NotZeroDimensional { variable: gb_variable_name(nv, v) });
    }
    let bounds: Vec<u32> = bounds.into_iter().map(|b| b.expect("checked")).collect();
    let mut exps = vec![0u32; nv];
    Ok(count_standard(&leads, &bounds, &mut exps, 0))
}

fn gb_variable_name(nv: usize, v: usize) -> String {
    format!("variable {} of {nv}", v + 1)
}

fn count_standard(leads: &[&Monomial], bounds: &[u32], exps: &mut Vec<u32>, var: usize) -> BigInt {
    if var == exps.len() {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for e in 0..bounds[var] {
        exps[var] = e;
        let m = Monomial::from_exponents(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            break;
        }
        total += count_standard(leads, bounds, exps, var + 1);
    }
    exps[var] = 0;
    total
}

/// Caps and sampling parameters for [`oracle_score_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_n: usize,
    pub max_r: usize,
    pub max_d: u32,
    pub bound: u64,
    /// Total number of weight vectors tried before giving up.
    pub max_attempts: usize,
    pub limits: GbLimits,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n: 5, max_r: 3, max_d: 3, bound: 1_000_000, max_attempts: 5, limits: GbLimits::default() }
    }
}

impl OracleConfig {
    /// Defaults, with the ground-set cap taken from `MLDEG_MAX_N` if set.
    pub fn from_env() -> Result<Self> {
        let mut config = OracleConfig::default();
        if let Ok(v) = std::env::var("MLDEG_MAX_N") {
            config.max_n = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("MLDEG_MAX_N must be a nonnegative integer, got {v:?}")))?;
        }
        Ok(config)
    }
}

/// Outcome of a certification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub count: BigInt,
    pub predicted: BigInt,
    /// Seed of the weight vector that produced `count`.
    pub seed: u64,
    pub resamples: usize,
    pub zero_dimensional: bool,
}

impl SolveReport {
    pub fn passed(&self) -> bool {
        self.zero_dimensional && self.count == self.predicted
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "count": self.count.to_string(),
            "predicted": self.predicted.to_string(),
            "seed": self.seed,
            "resamples": self.resamples,
            "zero_dimensional": self.zero_dimensional,
        })
    }
}

const SEED_STEP: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of the `k`-th attempt.
pub(crate) fn derived_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_add((k as u64).wrapping_mul(SEED_STEP))
}

/// Solves the score system of `space` for random weights and compares the
/// number of solutions with `D(L, d)` from the matroid. Resamples the
/// weights when the system is not zero-dimensional or the count disagrees.
pub fn oracle_score_count(space: &Subspace, d: u32, seed: u64, config: &OracleConfig) -> Result<SolveReport> {
    let (n, r) = (space.ambient_dim(), space.dim());
    if d == 0 {
        return Err(Error::Domain("the solver needs d >= 1".into()));
    }
    if n > config.max_n || r > config.max_r || d > config.max_d {
        return Err(Error::Capacity(format!(
            "solver limited to n <= {}, r <= {}, d <= {}; got n = {n}, r = {r}, d = {d}",
            config.max_n, config.max_r, config.max_d
        )));
    }
    let predicted = score_count(&Matroid::from_subspace(space.clone())?, d)?;
    if r == 0 {
        // no parameters: the only point of L is 0, which is not in the torus unless n = 0
        let count = if n == 0 { BigInt::one() } else { BigInt::zero() };
        return Ok(SolveReport { count, predicted, seed, resamples: 0, zero_dimensional: true });
    }
    let mut seeds = Vec::new();
    let mut last = String::new();
    for k in 0..config.max_attempts.max(1) {
        let attempt_seed = derived_seed(seed, k);
        seeds.push(attempt_seed);
        let s = random_generic_s(n, attempt_seed, config.bound)?;
        let system = build_score_system(space, &s, d)?;
        let gb = buchberger(&system.equations, config.limits)?;
        match count_torus_solutions(&gb) {
            Ok(count) if count == predicted => {
                return Ok(SolveReport { count, predicted, seed: attempt_seed, resamples: k, zero_dimensional: true });
            }
            Ok(count) => last = format!("count {count} differs from predicted {predicted}"),
            Err(Error::NotZeroDimensional { variable }) => {
                last = format!("ideal not zero-dimensional ({variable} has no pure power)")
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::CertificationFailure { seeds, reason: last })
}
