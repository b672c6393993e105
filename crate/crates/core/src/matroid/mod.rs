//! Matroids on `{1, ..., n}` given by a realizing subspace or a list of
//! bases, with minors, flats and connected components.

mod lattice;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::elements::{surviving_labels, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::subspace::{integer_rank, QMatrix, Subspace};

pub use lattice::FlatLattice;

/// A matroid together with the original labels of its ground set, as
/// produced by the minor operations.
pub type Minor = (Matroid, Vec<usize>);

enum Repr {
    /// Column matroid of the rref basis of a subspace; `int_rows` holds the
    /// same rows scaled to primitive integer vectors.
    Realized { space: Subspace, int_rows: Vec<Vec<BigInt>> },
    /// Sorted, deduplicated bases.
    Bases(Vec<ElementSet>),
}

pub struct Matroid {
    n: usize,
    rank: usize,
    repr: Repr,
    rank_cache: RwLock<HashMap<u64, usize>>,
}

/// Canonical memoization key: equal keys imply equal matroids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MatroidKey {
    Realized(Subspace),
    Bases(usize, Vec<u64>),
}

impl Matroid {
    /// Column matroid of `a`: a set of columns is independent iff those
    /// columns are linearly independent.
    pub fn from_matrix(a: &QMatrix) -> Result<Self> {
        Self::from_subspace(Subspace::row_span(a))
    }

    /// The matroid of the subspace `l`, realized by any matrix whose rows
    /// span `l`.
    pub fn from_subspace(space: Subspace) -> Result<Self> {
        let n = space.ambient_dim();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        let int_rows = space.basis().row_vecs().map(primitive_integer_row).collect();
        Ok(Matroid { n, rank: space.dim(), repr: Repr::Realized { space, int_rows }, rank_cache: RwLock::default() })
    }

    /// Matroid given by its bases. The basis exchange axiom is checked.
    pub fn from_bases(n: usize, bases: Vec<ElementSet>) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        let ground = ElementSet::full(n);
        let bases: Vec<ElementSet> = bases.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let Some(first) = bases.first() else {
            return Err(Error::Value("a matroid needs at least one basis".into()));
        };
        let rank = first.len();
        for b in &bases {
            if !b.is_subset(ground) {
                return Err(Error::Value(format!("basis {b:?} is not inside the ground set of size {n}")));
            }
            if b.len() != rank {
                return Err(Error::Value(format!("bases {first:?} and {b:?} have different sizes")));
            }
        }
        let lookup: BTreeSet<ElementSet> = bases.iter().copied().collect();
        for &a in &bases {
            for &b in &bases {
                for x in a.difference(b).iter() {
                    let exchanged = b.difference(a).iter().any(|y| lookup.contains(&a.without(x).with(y)));
                    if !exchanged {
                        return Err(Error::Value(format!("basis exchange fails for {a:?}, {b:?} at element {x}")));
                    }
                }
            }
        }
        Ok(Matroid { n, rank, repr: Repr::Bases(bases), rank_cache: RwLock::default() })
    }

    /// `U_{r,n}`, realized by the Vandermonde matrix with nodes `1..=n`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Domain(format!("U_{{{r},{n}}} needs r <= n")));
        }
        let rows: Vec<Vec<Rational>> =
            (0..r).map(|i| (1..=n).map(|j| Rational::from_integer(BigInt::from(j).pow(i as u32))).collect()).collect();
        Self::from_matrix(&QMatrix::from_rows(n, rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn subspace(&self) -> Option<&Subspace> {
        match &self.repr {
            Repr::Realized { space, .. } => Some(space),
            Repr::Bases(_) => None,
        }
    }

    pub fn is_realized(&self) -> bool {
        self.subspace().is_some()
    }

    pub fn key(&self) -> MatroidKey {
        match &self.repr {
            Repr::Realized { space, .. } => MatroidKey::Realized(space.clone()),
            Repr::Bases(b) => MatroidKey::Bases(self.n, b.iter().map(|s| s.bits()).collect()),
        }
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        let s = s.intersection(self.ground_set());
        match &self.repr {
            Repr::Bases(bases) => bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0),
            Repr::Realized { int_rows, .. } => {
                if s.is_empty() || self.rank == 0 {
                    return 0;
                }
                if let Some(&r) = self.rank_cache.read().expect("rank cache poisoned").get(&s.bits()) {
                    return r;
                }
                let cols: Vec<usize> = s.iter().map(|e| e - 1).collect();
                let sub = int_rows.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
                let r = integer_rank(sub, cols.len());
                self.rank_cache.write().expect("rank cache poisoned").insert(s.bits(), r);
                r
            }
        }
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    /// All bases in increasing bitmask order.
    pub fn bases(&self) -> Vec<ElementSet> {
        match &self.repr {
            Repr::Bases(b) => b.clone(),
            Repr::Realized { .. } => self.ground_set().subsets().filter(|&s| self.is_basis(s)).collect(),
        }
    }

    /// The largest superset of `s` with the same rank.
    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        self.ground_set().difference(s).iter().filter(|&e| self.rank_of(s.with(e)) == r).fold(s, ElementSet::with)
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        let r = self.rank_of(s);
        self.ground_set().difference(s).iter().all(|e| self.rank_of(s.with(e)) > r)
    }

    /// Elements of rank zero.
    pub fn loops(&self) -> ElementSet {
        match &self.repr {
            Repr::Realized { space, .. } => {
                (1..=self.n).filter(|&j| (0..space.dim()).all(|i| space.basis().get(i, j - 1).is_zero())).collect()
            }
            Repr::Bases(_) => (1..=self.n).filter(|&e| self.rank_of(ElementSet::singleton(e)) == 0).collect(),
        }
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> ElementSet {
        match &self.repr {
            // a pivot column is a coloop iff its rref row has no other nonzero entry
            Repr::Realized { space, .. } => space
                .pivots()
                .iter()
                .enumerate()
                .filter(|&(i, &p)| (0..self.n).all(|j| j == p || space.basis().get(i, j).is_zero()))
                .map(|(_, &p)| p + 1)
                .collect(),
            Repr::Bases(bases) => bases.iter().fold(self.ground_set(), |acc, &b| acc.intersection(b)),
        }
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(ElementSet::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground_set().without(e)) + 1 == self.rank
    }

    /// `M|F`, relabeled onto `{1, ..., |F|}`.
    pub fn restrict(&self, f: ElementSet) -> Minor {
        let f = f.intersection(self.ground_set());
        let removed = self.ground_set().difference(f);
        match &self.repr {
            Repr::Realized { space, .. } => {
                let (sub, labels) = space.restrict(f);
                (Self::from_subspace(sub).expect("minor of a valid matroid"), labels)
            }
            Repr::Bases(bases) => {
                let size = bases.iter().map(|b| b.intersection(f).len()).max().unwrap_or(0);
                let minor = bases
                    .iter()
                    .map(|b| b.intersection(f))
                    .filter(|b| b.len() == size)
                    .map(|b| b.compress(removed))
                    .collect();
                (Self::from_bases_unchecked(f.len(), minor), surviving_labels(self.n, removed))
            }
        }
    }

    /// `M/I`, relabeled onto `{1, ..., n - |I|}`.
    pub fn contract_set(&self, i: ElementSet) -> Minor {
        let i = i.intersection(self.ground_set());
        match &self.repr {
            Repr::Realized { space, .. } => {
                let (sub, labels) = space.contract(i);
                (Self::from_subspace(sub).expect("minor of a valid matroid"), labels)
            }
            Repr::Bases(bases) => {
                let rk = self.rank_of(i);
                let minor = bases
                    .iter()
                    .filter(|b| b.intersection(i).len() == rk)
                    .map(|b| b.difference(i).compress(i))
                    .collect();
                (Self::from_bases_unchecked(self.n - i.len(), minor), surviving_labels(self.n, i))
            }
        }
    }

    /// `M \ e`.
    pub fn delete(&self, e: usize) -> Minor {
        self.restrict(self.ground_set().without(e))
    }

    /// `M / e`.
    pub fn contract(&self, e: usize) -> Minor {
        self.contract_set(ElementSet::singleton(e))
    }

    /// Ground set of `self` followed by that of `other`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        match (self.subspace(), other.subspace()) {
            (Some(a), Some(b)) => {
                let mut rows = Vec::new();
                for row in a.basis().row_vecs() {
                    let mut v = row.to_vec();
                    v.resize(n, Rational::zero());
                    rows.push(v);
                }
                for row in b.basis().row_vecs() {
                    let mut v = vec![Rational::zero(); self.n];
                    v.extend(row.iter().cloned());
                    rows.push(v);
                }
                Self::from_matrix(&QMatrix::from_rows(n, rows)?)
            }
            _ => {
                let mut bases = Vec::new();
                for a in self.bases() {
                    for b in other.bases() {
                        bases.push(ElementSet::from_bits(a.bits() | (b.bits() << self.n)));
                    }
                }
                Ok(Self::from_bases_unchecked(n, bases))
            }
        }
    }

    /// Connected components, ordered by smallest element. Two elements share
    /// a component iff they are linked through fundamental circuits of a
    /// fixed basis; this is the finest partition on which the rank function
    /// is additive.
    pub fn components(&self) -> Vec<ElementSet> {
        let basis = self.some_basis();
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for g in self.ground_set().difference(basis).iter() {
            for b in basis.iter() {
                if self.rank_of(basis.without(b).with(g)) == self.rank {
                    let (rg, rb) = (find(&mut parent, g), find(&mut parent, b));
                    parent[rg.max(rb)] = rg.min(rb);
                }
            }
        }
        let mut groups: Vec<ElementSet> = Vec::new();
        let mut root_index: HashMap<usize, usize> = HashMap::new();
        for e in 1..=self.n {
            let root = find(&mut parent, e);
            let idx = *root_index.entry(root).or_insert_with(|| {
                groups.push(ElementSet::EMPTY);
                groups.len() - 1
            });
            groups[idx] = groups[idx].with(e);
        }
        groups
    }

    /// Every connected component has rank one.
    pub fn is_partition_matroid(&self) -> bool {
        self.components().into_iter().all(|c| self.rank_of(c) == 1)
    }

    /// Lexicographically greedy basis.
    pub fn some_basis(&self) -> ElementSet {
        let mut basis = ElementSet::EMPTY;
        for e in 1..=self.n {
            if basis.len() == self.rank {
                break;
            }
            let candidate = basis.with(e);
            if self.is_independent(candidate) {
                basis = candidate;
            }
        }
        basis
    }

    /// Compares rank functions on every subset (exponential in `n`).
    pub fn same_rank_function(&self, other: &Matroid) -> bool {
        self.n == other.n
            && self.rank == other.rank
            && self.ground_set().subsets().all(|s| self.rank_of(s) == other.rank_of(s))
    }

    pub fn flats(&self) -> FlatLattice {
        FlatLattice::of(self)
    }

    /// `{"matrix": ...}` for realized matroids, `{"n": n, "bases": [...]}`
    /// otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Realized { space, .. } => serde_json::json!({ "matrix": space.basis().to_json() }),
            Repr::Bases(b) => {
                let bases: Vec<Vec<usize>> = b.iter().map(|s| s.to_vec()).collect();
                serde_json::json!({ "n": self.n, "bases": bases })
            }
        }
    }

    /// Reads either of the [`to_json`](Self::to_json) layouts, or a bare
    /// matrix object.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        if let Some(matrix) = value.get("matrix") {
            return Self::from_matrix(&QMatrix::from_json(matrix)?);
        }
        if value.get("entries").is_some() {
            return Self::from_matrix(&QMatrix::from_json(value)?);
        }
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("matroid needs \"matrix\", or \"n\" with \"bases\"".into()))?
            as usize;
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { n, limit: MAX_ELEMENTS });
        }
        let raw = value
            .get("bases")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("explicit matroid needs a \"bases\" array".into()))?;
        let mut bases = Vec::with_capacity(raw.len());
        for b in raw {
            let items = b.as_array().ok_or_else(|| Error::Parse(format!("basis {b} is not an array")))?;
            let mut set = ElementSet::EMPTY;
            for item in items {
                let e = item
                    .as_u64()
                    .filter(|&e| e >= 1 && e as usize <= n)
                    .ok_or_else(|| Error::Value(format!("basis element {item} is not in 1..={n}")))?;
                set = set.with(e as usize);
            }
            bases.push(set);
        }
        Self::from_bases(n, bases)
    }

    fn from_bases_unchecked(n: usize, bases: Vec<ElementSet>) -> Self {
        let bases: Vec<ElementSet> = bases.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let rank = bases.first().map_or(0, |b| b.len());
        Matroid { n, rank, repr: Repr::Bases(bases), rank_cache: RwLock::default() }
    }
}

fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        let repr = match &self.repr {
            Repr::Realized { space, int_rows } => Repr::Realized { space: space.clone(), int_rows: int_rows.clone() },
            Repr::Bases(b) => Repr::Bases(b.clone()),
        };
        Matroid { n: self.n, rank: self.rank, repr, rank_cache: RwLock::default() }
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_realized() { "realized" } else { "bases" };
        write!(f, "Matroid {{ n: {}, rank: {}, {kind} }}", self.n, self.rank)
    }
}

#[cfg(test)]
mod tests;
