use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Matroid;
use crate::elements::ElementSet;

/// Ground sets up to this size enumerate flats by testing every subset.
const SUBSET_SCAN_LIMIT: usize = 16;

/// The lattice of flats with all Möbius values `mu(F', F)` for `F' <= F`.
///
/// Flats are sorted by rank, then by bitmask, so index 0 is the bottom
/// `cl(∅)` and the last index is the ground set.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    index: HashMap<ElementSet, usize>,
    mobius: HashMap<(usize, usize), BigInt>,
}

impl FlatLattice {
    pub fn of(m: &Matroid) -> Self {
        let mut flats = if m.n() <= SUBSET_SCAN_LIMIT { flats_by_subset_scan(m) } else { flats_by_rank_extension(m) };
        flats.sort_by_key(|&f| (m.rank_of(f), f.bits()));
        let ranks: Vec<usize> = flats.iter().map(|&f| m.rank_of(f)).collect();
        let index = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mobius = mobius_table(&flats);
        FlatLattice { flats, ranks, index, mobius }
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self, idx: usize) -> usize {
        self.ranks[idx]
    }

    pub fn index_of(&self, flat: ElementSet) -> Option<usize> {
        self.index.get(&flat).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// `mu(F_lower, F_upper)`, or `None` unless `F_lower ⊆ F_upper`.
    pub fn mobius(&self, lower: usize, upper: usize) -> Option<&BigInt> {
        self.mobius.get(&(lower, upper))
    }

    /// `mu(cl(∅), F)` for every flat, in lattice order.
    pub fn mobius_from_bottom(&self) -> Vec<BigInt> {
        (0..self.flats.len()).map(|j| self.mobius[&(0, j)].clone()).collect()
    }

    /// Flats `G` with `lower ⊆ G ⊆ upper`.
    pub fn interval(&self, lower: usize, upper: usize) -> Vec<usize> {
        let (lo, hi) = (self.flats[lower], self.flats[upper]);
        (0..self.flats.len()).filter(|&g| lo.is_subset(self.flats[g]) && self.flats[g].is_subset(hi)).collect()
    }

    /// `{"flats": [[...], ...], "mobius_from_bottom": [int, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let flats: Vec<Vec<usize>> = self.flats.iter().map(|f| f.to_vec()).collect();
        let mobius: Vec<serde_json::Value> = self
            .mobius_from_bottom()
            .iter()
            .map(|v| match i64::try_from(v) {
                Ok(small) => serde_json::Value::from(small),
                // beyond 64 bits the value is kept exact as a string
                Err(_) => serde_json::Value::from(v.to_string()),
            })
            .collect();
        serde_json::json!({ "flats": flats, "mobius_from_bottom": mobius })
    }
}

fn flats_by_subset_scan(m: &Matroid) -> Vec<ElementSet> {
    m.ground_set().subsets().filter(|&s| m.is_flat(s)).collect()
}

/// Flats of rank `k + 1` are the closures `cl(F ∪ e)` of rank-`k` flats.
pub(crate) fn flats_by_rank_extension(m: &Matroid) -> Vec<ElementSet> {
    let mut level: BTreeSet<ElementSet> = BTreeSet::from([m.closure(ElementSet::EMPTY)]);
    let mut all: Vec<ElementSet> = level.iter().copied().collect();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for &f in &level {
            for e in m.ground_set().difference(f).iter() {
                next.insert(m.closure(f.with(e)));
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all
}

/// `mu(F, F) = 1` and `mu(F', F) = -sum_{F' ⊆ G ⊊ F} mu(F', G)`; `flats`
/// must be sorted so that every flat comes after its subflats.
fn mobius_table(flats: &[ElementSet]) -> HashMap<(usize, usize), BigInt> {
    let mut table = HashMap::new();
    for (lo, &fl) in flats.iter().enumerate() {
        let above: Vec<usize> = (lo..flats.len()).filter(|&j| fl.is_subset(flats[j])).collect();
        let mut values: Vec<BigInt> = Vec::with_capacity(above.len());
        for (pos, &hi) in above.iter().enumerate() {
            let value = if pos == 0 {
                BigInt::one()
            } else {
                let fh = flats[hi];
                let mut sum = BigInt::zero();
                for (k, &g) in above[..pos].iter().enumerate() {
                    if flats[g].is_subset(fh) {
                        sum += &values[k];
                    }
                }
                -sum
            };
            table.insert((lo, hi), value.clone());
            values.push(value);
        }
    }
    table
}
