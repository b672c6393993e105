//! Exact linear algebra over `Q`: reduced row echelon form, rank, orthogonal
//! complements, and coordinate restriction/contraction of subspaces.
//!
//! Elimination runs fraction-free on integer rows (each row is scaled to
//! integers and kept primitive), and only the final pivots are normalized
//! back to rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::elements::{surviving_labels, ElementSet};
use crate::error::{Error, Result};

/// Dense `rows x cols` rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe a matrix with
    /// no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("row of length {} in a matrix with {cols} columns", bad.len())));
        }
        let nrows = rows.len();
        Ok(QMatrix { rows: nrows, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(|i| self.row(i))
    }

    pub fn transpose(&self) -> QMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        QMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// The submatrix on the given columns, in increasing order.
    pub fn select_columns(&self, cols: ElementSet) -> QMatrix {
        let picked: Vec<usize> = cols.iter().filter(|&c| c <= self.cols).map(|c| c - 1).collect();
        let mut entries = Vec::with_capacity(self.rows * picked.len());
        for i in 0..self.rows {
            entries.extend(picked.iter().map(|&j| self.get(i, j).clone()));
        }
        QMatrix { rows: self.rows, cols: picked.len(), entries }
    }

    /// `{"rows": r, "cols": n, "entries": [["1", "0", "2/3"], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<String>> = self.row_vecs().map(|r| r.iter().map(format_rational).collect()).collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    /// Accepts entries as rational strings or JSON integers.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let field =
            |name: &str| value.get(name).ok_or_else(|| Error::Parse(format!("matrix is missing field {name:?}")));
        let count = |name: &str| -> Result<usize> {
            field(name)?
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| Error::Parse(format!("matrix field {name:?} must be a nonnegative integer")))
        };
        let rows = count("rows")?;
        let cols = count("cols")?;
        let grid = field("entries")?
            .as_array()
            .ok_or_else(|| Error::Parse("matrix entries must be an array of rows".into()))?;
        if grid.len() != rows {
            return Err(Error::Dimension(format!("{} entry rows, expected {rows}", grid.len())));
        }
        let mut parsed = Vec::with_capacity(rows);
        for (i, row) in grid.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| Error::Parse(format!("entries[{i}] must be an array")))?;
            let row = row
                .iter()
                .map(|cell| match cell {
                    serde_json::Value::String(s) => parse_rational(s),
                    serde_json::Value::Number(n) if n.is_i64() => {
                        Ok(Rational::from_integer(n.as_i64().unwrap_or_default().into()))
                    }
                    other => Err(Error::Value(format!("matrix entry {other} is not a rational string"))),
                })
                .collect::<Result<Vec<_>>>()?;
            parsed.push(row);
        }
        Self::from_rows(cols, parsed)
    }
}

/// Integer row with a fraction-free representation of a rational row.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
    row
}

/// `row <- p * row - f * pivot_row`, then made primitive.
fn eliminate(row: &mut Vec<BigInt>, pivot_row: &[BigInt], col: usize) {
    let f = row[col].clone();
    if f.is_zero() {
        return;
    }
    let p = &pivot_row[col];
    let g = p.gcd(&f);
    let (pm, fm) = (p / &g, f / &g);
    let updated: Vec<BigInt> = row.iter().zip(pivot_row).map(|(a, b)| &pm * a - &fm * b).collect();
    *row = make_primitive(updated);
}

/// Forward elimination of integer rows; returns the nonzero echelon rows and
/// their pivot columns. With `reduce`, entries above pivots are cleared too.
pub(crate) fn integer_echelon(
    mut rows: Vec<Vec<BigInt>>,
    ncols: usize,
    reduce: bool,
) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        // pick the pivot with the smallest magnitude to limit growth
        let Some(pivot) =
            (top..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].magnitude().bits())
        else {
            continue;
        };
        rows.swap(top, pivot);
        let (head, tail) = rows.split_at_mut(top + 1);
        let pivot_row = &head[top];
        for row in tail.iter_mut() {
            eliminate(row, pivot_row, col);
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    if reduce {
        for k in (0..pivots.len()).rev() {
            let (head, tail) = rows.split_at_mut(k);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                eliminate(row, pivot_row, pivots[k]);
            }
        }
    }
    (rows, pivots)
}

pub(crate) fn integer_rank(rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    integer_echelon(rows, ncols, false).1.len()
}

fn rref_with_pivots(a: &QMatrix) -> (QMatrix, Vec<usize>) {
    let rows: Vec<Vec<BigInt>> = a.row_vecs().map(integer_row).collect();
    let (rows, pivots) = integer_echelon(rows, a.cols, true);
    let mut entries = Vec::with_capacity(rows.len() * a.cols);
    for (row, &p) in rows.iter().zip(&pivots) {
        let lead = &row[p];
        entries.extend(row.iter().map(|v| Rational::new(v.clone(), lead.clone())));
    }
    (QMatrix { rows: rows.len(), cols: a.cols, entries }, pivots)
}

/// Reduced row echelon form with zero rows dropped.
pub fn rref(a: &QMatrix) -> QMatrix {
    rref_with_pivots(a).0
}

pub fn rank(a: &QMatrix) -> usize {
    integer_rank(a.row_vecs().map(integer_row).collect(), a.cols)
}

/// A linear subspace of `Q^n`, stored by its canonical rref basis, so two
/// subspaces are equal exactly when their bases are entrywise equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The row span of `a`.
    pub fn row_span(a: &QMatrix) -> Self {
        let (basis, pivots) = rref_with_pivots(a);
        Subspace { basis, pivots }
    }

    pub fn zero(n: usize) -> Self {
        Subspace { basis: QMatrix::zeros(0, n), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { basis: QMatrix::identity(n), pivots: (0..n).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Basis rows in reduced row echelon form.
    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    /// Pivot columns of the rref basis (0-based).
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        // in rref, v lies in the span iff v = sum_i v[pivot_i] * row_i
        (0..self.ambient_dim()).all(|j| {
            let expected: Rational = self.pivots.iter().enumerate().map(|(i, &p)| &v[p] * self.basis.get(i, j)).sum();
            expected == v[j]
        })
    }

    /// Orthogonal complement under the standard pairing.
    pub fn kernel(&self) -> Subspace {
        let n = self.ambient_dim();
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = -self.basis.get(i, f);
            }
            rows.push(v);
        }
        let m = QMatrix { rows: rows.len(), cols: n, entries: rows.into_iter().flatten().collect() };
        Subspace::row_span(&m)
    }

    /// Image under the coordinate projection onto `f`, together with the
    /// original labels of the surviving coordinates.
    pub fn restrict(&self, f: ElementSet) -> (Subspace, Vec<usize>) {
        let n = self.ambient_dim();
        let f = f.intersection(ElementSet::full(n));
        let labels = f.to_vec();
        (Subspace::row_span(&self.basis.select_columns(f)), labels)
    }

    /// Vectors of `self` vanishing on `i`, with the `i` coordinates dropped.
    pub fn contract(&self, i: ElementSet) -> (Subspace, Vec<usize>) {
        let n = self.ambient_dim();
        let i = i.intersection(ElementSet::full(n));
        let keep = ElementSet::full(n).difference(i);
        let labels = surviving_labels(n, i);
        // coefficient vectors c with c^T B_I = 0
        let block = self.basis.select_columns(i).transpose();
        let coeffs = if block.rows == 0 { Subspace::full(self.dim()) } else { Subspace::row_span(&block).kernel() };
        let r = self.dim();
        let mut rows = Vec::with_capacity(coeffs.dim());
        for c in coeffs.basis.row_vecs() {
            let combined: Vec<Rational> =
                keep.iter().map(|j| (0..r).map(|k| &c[k] * self.basis.get(k, j - 1)).sum()).collect();
            rows.push(combined);
        }
        let m = QMatrix { rows: rows.len(), cols: keep.len(), entries: rows.into_iter().flatten().collect() };
        (Subspace::row_span(&m), labels)
    }

    /// Rank of the column submatrix on `cols`.
    pub fn column_rank(&self, cols: ElementSet) -> usize {
        rank(&self.basis.select_columns(cols))
    }
}
