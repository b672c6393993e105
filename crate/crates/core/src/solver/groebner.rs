//! Buchberger's algorithm in grevlex over `Q`.
//!
//! Each generator also carries its image modulo a large prime. An
//! S-polynomial whose image reduces to zero is set aside instead of being
//! reduced over `Q`; once the pair queue is empty the reduced basis is
//! checked exactly (every S-polynomial and every input reduces to zero) and
//! the computation resumes from any remainder that does not vanish.

use std::cell::Cell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{Monomial, Polynomial};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Resource caps for [`buchberger`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbLimits {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
    /// Largest numerator plus denominator bit length of a coefficient.
    pub max_coefficient_bits: u64,
    /// Budget for coefficient arithmetic, in estimated limb operations.
    pub max_work: u64,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_basis: 5_000,
            max_degree: 64,
            max_pairs: 1_000_000,
            max_coefficient_bits: 32_768,
            max_work: 100_000_000,
        }
    }
}

type Terms = Vec<(Monomial, Rational)>;

/// Monic polynomial, terms sorted by decreasing monomial.
#[derive(Clone, Debug)]
struct MonicPoly {
    terms: Terms,
}

impl MonicPoly {
    fn from_terms(mut terms: Terms) -> MonicPoly {
        if let Some(lc) = terms.first().map(|t| t.1.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in terms.iter_mut() {
                    t.1 *= &inv;
                }
            }
        }
        MonicPoly { terms }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Fully reduces `p` by `reducers`.
fn reduce_terms<'a>(p: Terms, reducers: impl Iterator<Item = &'a MonicPoly> + Clone) -> Terms {
    reduce_terms_counted(p, reducers, &mut 0)
}

fn limbs(c: &Rational) -> u64 {
    (c.numer().bits() + c.denom().bits()) / 64 + 1
}

/// [`reduce_terms`], adding to `cost` an estimate of the limb operations
/// spent on coefficient products.
fn reduce_terms_counted<'a>(p: Terms, reducers: impl Iterator<Item = &'a MonicPoly> + Clone, cost: &mut u64) -> Terms {
    let mut work: BTreeMap<Monomial, Rational> = p.into_iter().collect();
    let mut rem: Terms = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let Some(g) = reducers.clone().find(|g| g.lm().divides(&m)) else {
            rem.push((m, c));
            continue;
        };
        let shift = m.quotient(g.lm());
        let lc = limbs(&c);
        for (t, b) in &g.terms[1..] {
            *cost += lc * limbs(b);
            let delta = &c * b;
            match work.entry(t.times(&shift)) {
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
    rem
}

fn s_polynomial(f: &MonicPoly, g: &MonicPoly) -> Terms {
    let l = f.lm().lcm(g.lm());
    let shift_f = l.quotient(f.lm());
    let shift_g = l.quotient(g.lm());
    let mut terms: Terms = f.terms[1..].iter().map(|(m, c)| (m.times(&shift_f), c.clone())).collect();
    terms.extend(g.terms[1..].iter().map(|(m, c)| (m.times(&shift_g), -c)));
    Polynomial::new(l.exponents().len(), terms).terms().to_vec()
}

/// 2^61 - 1.
const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn int_mod(v: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = ((v % &p) + &p) % &p;
    r.to_u64().expect("reduced below the prime")
}

fn rational_mod(c: &Rational) -> Option<u64> {
    let den = int_mod(c.denom());
    (den != 0).then(|| mul_mod(int_mod(c.numer()), pow_mod(den, PRIME - 2)))
}

type ModTerms = Vec<(Monomial, u64)>;

/// Image modulo [`PRIME`]; none if a denominator vanishes there.
fn image(p: &MonicPoly) -> Option<ModTerms> {
    p.terms.iter().map(|(m, c)| rational_mod(c).map(|c| (m.clone(), c))).collect()
}

/// Whether `p` reduces to zero modulo [`PRIME`] by the monic `reducers`.
fn reduces_to_zero_mod<'a>(p: ModTerms, reducers: impl Iterator<Item = &'a ModTerms> + Clone) -> bool {
    let mut work: BTreeMap<Monomial, u64> = BTreeMap::new();
    for (m, c) in p {
        let v = work.entry(m).or_insert(0);
        *v = (*v + c) % PRIME;
    }
    work.retain(|_, c| *c != 0);
    while let Some((m, c)) = work.pop_last() {
        let Some(g) = reducers.clone().find(|g| g[0].0.divides(&m)) else {
            return false;
        };
        let shift = m.quotient(&g[0].0);
        for (t, b) in &g[1..] {
            let delta = PRIME - mul_mod(c, *b);
            match work.entry(t.times(&shift)) {
                Entry::Vacant(e) => {
                    e.insert(delta);
                }
                Entry::Occupied(mut e) => {
                    let v = (*e.get() + delta) % PRIME;
                    if v == 0 {
                        e.remove();
                    } else {
                        *e.get_mut() = v;
                    }
                }
            }
        }
    }
    true
}

fn s_polynomial_mod(f: &ModTerms, g: &ModTerms) -> ModTerms {
    let l = f[0].0.lcm(&g[0].0);
    let shift_f = l.quotient(&f[0].0);
    let shift_g = l.quotient(&g[0].0);
    f[1..]
        .iter()
        .map(|(m, c)| (m.times(&shift_f), *c))
        .chain(g[1..].iter().map(|(m, c)| (m.times(&shift_g), (PRIME - c) % PRIME)))
        .collect()
}

/// Critical pair ordered by sugar degree, then by lcm degree, then
/// lexicographically by the lcm exponent vector, then by indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    degree: u32,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

/// A reduced Gröbner basis in grevlex with `x` variables before `t`
/// variables (variable 0 smallest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    /// Monic, sorted by increasing leading monomial.
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    fn unit(nvars: usize) -> Self {
        GroebnerBasis { nvars, generators: vec![Polynomial::constant(nvars, Rational::one())] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators.iter().filter_map(Polynomial::leading_monomial).collect()
    }

    /// The ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Polynomial::is_unit)
    }

    fn monic(&self) -> Vec<MonicPoly> {
        self.generators.iter().map(|g| MonicPoly { terms: g.terms().to_vec() }).collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let basis = self.monic();
        Polynomial::new(self.nvars, reduce_terms(p.terms().to_vec(), basis.iter()))
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial of two generators
    /// reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let basis = self.monic();
        basis.iter().enumerate().all(|(i, f)| {
            basis[i + 1..]
                .iter()
                .all(|g| f.lm().coprime(g.lm()) || reduce_terms(s_polynomial(f, g), basis.iter()).is_empty())
        })
    }

    /// Checks that no leading monomial divides a term of another generator.
    pub fn is_reduced(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_coefficient().is_some_and(One::is_one)
                && self.generators.iter().enumerate().all(|(j, h)| {
                    i == j || {
                        let lm = h.leading_monomial().expect("nonzero");
                        g.terms().iter().all(|(m, _)| !lm.divides(m))
                    }
                })
        })
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys`.
///
/// Pairs are selected by the sugar strategy and filtered by the
/// coprime-leading-monomial and chain criteria. Generators whose leading
/// monomial becomes divisible by a newer one stop acting as reducers.
/// Exceeding `limits` aborts with a capacity error describing the state
/// reached.
pub fn buchberger(polys: &[Polynomial], limits: GbLimits) -> Result<GroebnerBasis> {
    let nvars = polys.first().map_or(0, Polynomial::nvars);
    if polys.iter().any(|p| p.nvars() != nvars) {
        return Err(Error::Dimension("polynomials over different variable sets".into()));
    }
    let mut state = State { limits, ..State::default() };
    for p in polys {
        let h = state.reduce(p.terms().to_vec());
        if state.insert(h, p.total_degree()) {
            return Ok(GroebnerBasis::unit(nvars));
        }
    }
    loop {
        if state.run()? {
            return Ok(GroebnerBasis::unit(nvars));
        }
        let active = state.basis.iter().zip(&state.active).filter_map(|(g, a)| a.then_some(g.clone())).collect();
        let reduced = reduced_basis(active);
        let remainders = failed_checks(&reduced, polys);
        if remainders.is_empty() {
            let generators = reduced.into_iter().map(|g| Polynomial::new(nvars, g.terms)).collect();
            return Ok(GroebnerBasis { nvars, generators });
        }
        for (h, sugar) in remainders {
            let h = state.reduce(h);
            if state.insert(h, sugar) {
                return Ok(GroebnerBasis::unit(nvars));
            }
        }
    }
}

#[derive(Default)]
struct State {
    limits: GbLimits,
    basis: Vec<MonicPoly>,
    images: Vec<Option<ModTerms>>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    queue: BTreeSet<Pair>,
    pending: HashSet<(usize, usize)>,
    processed: usize,
    max_bits: u64,
    work: Cell<u64>,
}

impl State {
    fn reducers(&self) -> impl Iterator<Item = &MonicPoly> + Clone {
        self.basis.iter().zip(&self.active).filter_map(|(g, a)| a.then_some(g))
    }

    fn reduce(&self, p: Terms) -> MonicPoly {
        let mut cost = self.work.get();
        let h = MonicPoly::from_terms(reduce_terms_counted(p, self.reducers(), &mut cost));
        self.work.set(cost);
        h
    }

    /// Adds a reduced generator; returns whether it is a nonzero constant.
    fn insert(&mut self, h: MonicPoly, sugar: u32) -> bool {
        if h.is_zero() {
            return false;
        }
        if h.lm().is_one() {
            return true;
        }
        let j = self.basis.len();
        for i in 0..j {
            if !self.active[i] {
                continue;
            }
            let g = &self.basis[i];
            let lcm = g.lm().lcm(h.lm());
            let degree = lcm.degree();
            let sugar = (self.sugar[i] + degree - g.lm().degree()).max(sugar + degree - h.lm().degree());
            self.queue.insert(Pair { sugar, degree, lcm: lcm.exponents().to_vec(), i, j });
            self.pending.insert((i, j));
            if h.lm().divides(g.lm()) {
                self.active[i] = false;
            }
        }
        self.images.push(image(&h));
        self.basis.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        self.interreduce(j);
        false
    }

    /// Tail-reduces the active generators by the newest one.
    fn interreduce(&mut self, j: usize) {
        let lm = self.basis[j].lm().clone();
        for k in 0..j {
            if !self.active[k] || !self.basis[k].terms[1..].iter().any(|(m, _)| lm.divides(m)) {
                continue;
            }
            let reducers =
                self.basis.iter().zip(&self.active).enumerate().filter_map(|(i, (g, a))| (*a && i != k).then_some(g));
            let mut cost = self.work.get();
            let tail = reduce_terms_counted(self.basis[k].terms[1..].to_vec(), reducers, &mut cost);
            self.work.set(cost);
            self.basis[k].terms.truncate(1);
            self.basis[k].terms.extend(tail);
            self.images[k] = image(&self.basis[k]);
        }
    }

    /// Processes the pair queue; returns whether a nonzero constant was
    /// derived.
    fn run(&mut self) -> Result<bool> {
        while let Some(pair) = self.queue.pop_first() {
            self.pending.remove(&(pair.i, pair.j));
            self.processed += 1;
            let limits = self.limits;
            let active = self.active.iter().filter(|a| **a).count();
            if self.processed > limits.max_pairs {
                return Err(self.capacity(&pair, format!("{} pairs", self.processed)));
            }
            if active > limits.max_basis {
                return Err(self.capacity(&pair, format!("{active} generators")));
            }
            if pair.degree > limits.max_degree {
                return Err(self.capacity(&pair, format!("a pair of degree {}", pair.degree)));
            }
            let (f, g) = (&self.basis[pair.i], &self.basis[pair.j]);
            if f.lm().coprime(g.lm()) || self.chain_criterion(&pair) || self.vanishes_mod_prime(&pair) {
                continue;
            }
            let h = self.reduce(s_polynomial(f, g));
            let bits = h.terms.iter().map(|(_, c)| c.numer().bits() + c.denom().bits()).max().unwrap_or(0);
            self.max_bits = self.max_bits.max(bits);
            if bits > limits.max_coefficient_bits {
                return Err(self.capacity(&pair, format!("a coefficient of {bits} bits")));
            }
            if self.work.get() > limits.max_work {
                return Err(self.capacity(&pair, format!("{} units of coefficient arithmetic", self.work.get())));
            }
            if self.insert(h, pair.sugar) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn capacity(&self, pair: &Pair, what: String) -> Error {
        Error::Capacity(format!(
            "Gröbner basis computation stopped at {what} (limits {:?}); state: pair degree {}, \
             {} active generators, {} pairs processed, {} pending, largest coefficient {} bits, \
             {} units of coefficient arithmetic",
            self.limits,
            pair.degree,
            self.active.iter().filter(|a| **a).count(),
            self.processed,
            self.queue.len(),
            self.max_bits,
            self.work.get(),
        ))
    }

    fn vanishes_mod_prime(&self, pair: &Pair) -> bool {
        let (Some(f), Some(g)) = (&self.images[pair.i], &self.images[pair.j]) else {
            return false;
        };
        let reducers = self.images.iter().zip(&self.active).filter_map(|(g, a)| if *a { g.as_ref() } else { None });
        reduces_to_zero_mod(s_polynomial_mod(f, g), reducers)
    }

    /// A third active generator whose leading monomial divides the lcm
    /// and whose pairs with both ends are already done.
    fn chain_criterion(&self, pair: &Pair) -> bool {
        if !self.active[pair.i] || !self.active[pair.j] {
            return false;
        }
        let lcm = Monomial::from_exponents(pair.lcm.clone());
        (0..self.basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && self.active[k]
                && self.basis[k].lm().divides(&lcm)
                && !self.pending.contains(&ordered(pair.i, k))
                && !self.pending.contains(&ordered(pair.j, k))
        })
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Minimal, tail-reduced, sorted by increasing leading monomial.
fn reduced_basis(basis: Vec<MonicPoly>) -> Vec<MonicPoly> {
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut minimal: Vec<MonicPoly> = Vec::new();
    for g in sorted {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    // no other leading monomial divides a head, so only tails change
    (0..minimal.len())
        .map(|k| {
            let others = minimal.iter().enumerate().filter(move |(i, _)| *i != k).map(|(_, g)| g);
            let mut terms = vec![minimal[k].terms[0].clone()];
            terms.extend(reduce_terms(minimal[k].terms[1..].to_vec(), others));
            MonicPoly { terms }
        })
        .collect()
}

/// Exact check over `Q` that `basis` is a Gröbner basis containing the
/// inputs. Returns the nonzero remainders with their sugar degrees.
fn failed_checks(basis: &[MonicPoly], inputs: &[Polynomial]) -> Vec<(Terms, u32)> {
    let mut failures = Vec::new();
    for p in inputs {
        let rem = reduce_terms(p.terms().to_vec(), basis.iter());
        if !rem.is_empty() {
            failures.push((rem, p.total_degree()));
        }
    }
    let mut pairs: Vec<(u32, Vec<u32>, usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lcm = basis[i].lm().lcm(basis[j].lm());
            pairs.push((lcm.degree(), lcm.exponents().to_vec(), i, j));
        }
    }
    pairs.sort();
    let mut pending: HashSet<(usize, usize)> = pairs.iter().map(|p| (p.2, p.3)).collect();
    for (degree, lcm, i, j) in pairs {
        pending.remove(&(i, j));
        let (f, g) = (&basis[i], &basis[j]);
        if f.lm().coprime(g.lm()) {
            continue;
        }
        let lcm = Monomial::from_exponents(lcm);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let rem = reduce_terms(s_polynomial(f, g), basis.iter());
        if !rem.is_empty() {
            failures.push((rem, degree));
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::new(nvars, terms.iter().map(|(e, c)| (Monomial::from_exponents(e.to_vec()), q(*c))).collect())
    }

    #[test]
    fn univariate_score_system() {
        // x t - 1, 3 x^2 - x with x = var 0, t = var 1
        let f = poly(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let g = poly(2, &[(&[2, 0], 3), (&[1, 0], -1)]);
        let gb = buchberger(&[f.clone(), g.clone()], GbLimits::default()).unwrap();
        let third = Rational::new(1.into(), 3.into());
        let expected = vec![
            Polynomial::new(2, vec![(Monomial::var(2, 0, 1), q(1)), (Monomial::one(2), -third)]),
            Polynomial::new(2, vec![(Monomial::var(2, 1, 1), q(1)), (Monomial::one(2), q(-3))]),
        ];
        assert_eq!(gb.generators(), expected.as_slice());
        assert!(gb.contains(&f) && gb.contains(&g));
        assert!(gb.is_reduced());
    }

    #[test]
    fn single_equation_is_already_a_basis() {
        let f = poly(1, &[(&[3], 2), (&[1], -4), (&[0], 6)]);
        let gb = buchberger(std::slice::from_ref(&f), GbLimits::default()).unwrap();
        assert_eq!(gb.generators(), &[f.monic()]);
    }

    #[test]
    fn linear_system_gives_rref() {
        // x + y + z - 1, x - y - 2 over vars (z, y, x) smallest first
        let f = poly(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], 1), (&[1, 0, 0], 1), (&[0, 0, 0], -1)]);
        let g = poly(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], -1), (&[0, 0, 0], -2)]);
        let gb = buchberger(&[f, g], GbLimits::default()).unwrap();
        // rref eliminating x then y: y + z/2 + 1/2, x + z/2 - 3/2
        let half = Rational::new(1.into(), 2.into());
        let y_row = Polynomial::new(
            3,
            vec![
                (Monomial::var(3, 1, 1), q(1)),
                (Monomial::var(3, 0, 1), half.clone()),
                (Monomial::one(3), half.clone()),
            ],
        );
        let x_row = Polynomial::new(
            3,
            vec![
                (Monomial::var(3, 2, 1), q(1)),
                (Monomial::var(3, 0, 1), half.clone()),
                (Monomial::one(3), -half * q(3)),
            ],
        );
        assert_eq!(gb.generators(), &[y_row, x_row]);
    }

    #[test]
    fn inconsistent_system_is_unit_ideal() {
        let f = poly(1, &[(&[1], 1)]);
        let g = poly(1, &[(&[1], 1), (&[0], 1)]);
        let gb = buchberger(&[f, g], GbLimits::default()).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn cyclic_three() {
        // x+y+z, xy+yz+zx, xyz-1: quotient dimension 6
        let s1 = poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let s2 = poly(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]);
        let s3 = poly(3, &[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]);
        let gb = buchberger(&[s1.clone(), s2.clone(), s3.clone()], GbLimits::default()).unwrap();
        assert!(gb.is_reduced());
        for f in [s1, s2, s3] {
            assert!(gb.contains(&f));
        }
        assert_eq!(super::super::count_torus_solutions(&gb).unwrap(), BigInt::from(6));
    }

    #[test]
    fn capacity_error() {
        let s1 = poly(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let s2 = poly(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]);
        let s3 = poly(3, &[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]);
        let limits = GbLimits { max_degree: 2, ..GbLimits::default() };
        assert!(matches!(buchberger(&[s1, s2, s3], limits), Err(Error::Capacity(_))));
    }
}
