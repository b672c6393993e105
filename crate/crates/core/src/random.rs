//! Deterministic random instances: test matrices with varied column
//! matroids and generic realizations of uniform matroids.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::Rational;
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subspace::QMatrix;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `rows x cols` matrix with integer entries in `[-bound, bound]`; each
/// entry is forced to zero with probability `zero_prob`.
pub fn random_integer_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64, zero_prob: f64) -> QMatrix {
    let entries = (0..rows * cols)
        .map(|_| {
            let v = if rng.gen_bool(zero_prob) { 0 } else { rng.gen_range(-bound..=bound) };
            Rational::from_integer(v.into())
        })
        .collect();
    QMatrix::new(rows, cols, entries).expect("sizes match")
}

/// A small rational matrix for randomized testing. Sparse entries and
/// a small value range make loops, parallel classes and non-uniform
/// dependencies common, so the generated column matroids are varied.
pub fn random_test_matrix<R: Rng>(rng: &mut R, max_n: usize) -> QMatrix {
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=n.min(5));
    let zero_prob = [0.0, 0.15, 0.35, 0.55][rng.gen_range(0..4)];
    let entries = (0..r * n)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                return Rational::from_integer(0.into());
            }
            let num = rng.gen_range(-3i64..=3);
            let den = if rng.gen_bool(0.2) { rng.gen_range(2i64..=3) } else { 1 };
            Rational::new(num.into(), den.into())
        })
        .collect();
    QMatrix::new(r, n, entries).expect("sizes match")
}

/// A stream of test matroids from [`random_test_matrix`].
pub fn random_test_matroids(seed: u64, count: usize, max_n: usize) -> Vec<Matroid> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| Matroid::from_matrix(&random_test_matrix(&mut rng, max_n)).expect("small matrix")).collect()
}

const UNIFORM_RETRIES: usize = 1000;

/// An `r x n` integer matrix with entries in `[-100, 100]` whose column
/// matroid is `U_{r,n}` (every `r` columns independent). Deterministic in
/// `seed`.
pub fn generic_uniform_matrix(n: usize, r: usize, seed: u64) -> Result<QMatrix> {
    if r < 1 || r > n {
        return Err(Error::Domain(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..UNIFORM_RETRIES {
        let a = random_integer_matrix(&mut rng, r, n, 100, 0.0);
        let m = Matroid::from_matrix(&a)?;
        if m.rank() == r && is_uniform(&m) {
            return Ok(a);
        }
    }
    Err(Error::Capacity(format!("no generic {r}x{n} matrix found in {UNIFORM_RETRIES} draws")))
}

/// Whether every `rank`-subset of the ground set is a basis.
pub fn is_uniform(m: &Matroid) -> bool {
    let r = m.rank();
    ElementSet::full(m.n()).subsets().filter(|s| s.len() == r).all(|s| m.rank_of(s) == r)
}
