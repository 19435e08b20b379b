//! Exact integer rank and invariant factors of sparse integer matrices.
//!
//! Elimination first consumes unit pivots sparsely, choosing the shortest
//! column and then the shortest row to limit fill-in. Whatever remains goes
//! through a dense Smith normal form. Arithmetic runs in checked `i64` and is
//! redone with arbitrary precision if anything overflows.

use std::collections::BTreeSet;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Matrices with fewer columns than this skip the sparse phase.
pub const DENSE_COLUMN_THRESHOLD: usize = 200;

/// Euclidean ring operations needed by the elimination.
pub trait Ring: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    /// Quotient with remainder of strictly smaller absolute value.
    fn div_rem(&self, other: &Self) -> (Self, Self);
    fn abs_cmp_key(&self) -> BigInt;
    fn to_big(&self) -> BigInt;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        (self / other, self % other)
    }
    fn abs_cmp_key(&self) -> BigInt {
        BigInt::from(*self).abs()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_rem(&self, other: &Self) -> (Self, Self) {
        Integer::div_rem(self, other)
    }
    fn abs_cmp_key(&self) -> BigInt {
        self.abs()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Column-sparse integer matrix. Each column lists `(row, value)` pairs with
/// strictly increasing rows and non-zero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix { nrows, cols: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Appends a column, sorting and dropping zeros.
    pub fn push_col(&mut self, mut col: Vec<(usize, i64)>) {
        col.retain(|&(_, v)| v != 0);
        col.sort_unstable_by_key(|&(r, _)| r);
        self.cols.push(col);
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self * other` (both column-sparse).
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.nrows);
        for col in &other.cols {
            let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
            for &(k, v) in col {
                for &(i, w) in &self.cols[k] {
                    *acc.entry(i).or_insert(0) += v * w;
                }
            }
            out.push_col(acc.into_iter().collect());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        out.nrows = self.nrows.max(other.nrows);
        out.cols.extend(other.cols.iter().cloned());
        out
    }
}

/// Rank and the non-zero invariant factors (ascending, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl Reduction {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Computes rank and invariant factors exactly.
pub fn reduce(m: &SparseMatrix) -> Reduction {
    match reduce_with::<i64>(m) {
        Some(r) => r,
        None => reduce_with::<BigInt>(m).expect("arbitrary precision does not overflow"),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    reduce(m).rank
}

fn reduce_with<R: Ring>(m: &SparseMatrix) -> Option<Reduction> {
    let mut cols: Vec<Vec<(usize, R)>> =
        m.cols.iter().map(|c| c.iter().map(|&(r, v)| (r, R::from_i64(v))).collect()).collect();
    let mut units = 0usize;
    if cols.len() >= DENSE_COLUMN_THRESHOLD {
        units = sparse_unit_phase(&mut cols, m.nrows)?;
    }
    let mut rest = dense_snf(&cols)?;
    let mut factors: Vec<BigInt> = std::iter::repeat_n(<BigInt as One>::one(), units).collect();
    factors.append(&mut rest);
    normalize(&mut factors);
    Some(Reduction { rank: factors.len(), invariant_factors: factors })
}

/// Eliminates unit pivots in place; returns how many were used. Used
/// columns are cleared.
fn sparse_unit_phase<R: Ring>(cols: &mut [Vec<(usize, R)>], nrows: usize) -> Option<usize> {
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (r, _) in c {
            row_cols[*r].insert(j);
        }
    }
    let mut active: BTreeSet<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let mut used = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (col len, row len, col)
        for &j in &active {
            let len = cols[j].len();
            if best.is_some_and(|b| b.0 <= len) {
                continue;
            }
            let row_len = cols[j].iter().filter(|(_, v)| v.is_unit()).map(|(r, _)| row_cols[*r].len()).min();
            if let Some(rl) = row_len {
                best = Some((len, rl, j));
            }
        }
        let Some((_, _, pc)) = best else { break };
        let (pr, pv) = cols[pc]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(r, _)| (row_cols[*r].len(), *r))
            .cloned()
            .expect("pivot column has a unit");
        let pivot_col = std::mem::take(&mut cols[pc]);
        for (r, _) in &pivot_col {
            row_cols[*r].remove(&pc);
        }
        active.remove(&pc);
        let others: Vec<usize> = row_cols[pr].iter().copied().collect();
        for j in others {
            let a = cols[j].iter().find(|(r, _)| *r == pr).map(|(_, v)| v.clone()).expect("indexed entry");
            // a / pv with pv = ±1.
            let factor = a.checked_mul(&pv)?;
            let old = std::mem::take(&mut cols[j]);
            let new = axpy(&old, &pivot_col, &factor)?;
            for (r, _) in &old {
                row_cols[*r].remove(&j);
            }
            for (r, _) in &new {
                row_cols[*r].insert(j);
            }
            if new.is_empty() {
                active.remove(&j);
            }
            cols[j] = new;
        }
        // The pivot row now only meets the pivot column; dropping both is a
        // row operation that leaves the other columns unchanged.
        used += 1;
    }
    Some(used)
}

/// `x - factor * y` on sorted sparse vectors.
fn axpy<R: Ring>(x: &[(usize, R)], y: &[(usize, R)], factor: &R) -> Option<Vec<(usize, R)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            let v = R::zero().checked_sub(&factor.checked_mul(&y[j].1)?)?;
            out.push((y[j].0, v));
            j += 1;
        } else {
            let v = x[i].1.checked_sub(&factor.checked_mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Diagonal entries (absolute values, non-zero) of a Smith-style reduction.
fn dense_snf<R: Ring>(cols: &[Vec<(usize, R)>]) -> Option<Vec<BigInt>> {
    let live_cols: Vec<&Vec<(usize, R)>> = cols.iter().filter(|c| !c.is_empty()).collect();
    if live_cols.is_empty() {
        return Some(Vec::new());
    }
    let mut live_rows: Vec<usize> = live_cols.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let m = live_rows.len();
    let n = live_cols.len();
    let mut a = vec![vec![R::zero(); n]; m];
    for (j, c) in live_cols.iter().enumerate() {
        for (r, v) in c.iter() {
            let i = live_rows.binary_search(r).expect("row collected");
            a[i][j] = v.clone();
        }
    }
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&a, (t..m).flat_map(|i| (t..n).map(move |j| (i, j)))) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let (q, _) = a[i][t].div_rem(&p);
                    for j in t..n {
                        let v = a[i][j].checked_sub(&q.checked_mul(&a[t][j])?)?;
                        a[i][j] = v;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let (q, _) = a[t][j].div_rem(&p);
                    for i in t..m {
                        let v = a[i][j].checked_sub(&q.checked_mul(&a[i][t])?)?;
                        a[i][j] = v;
                    }
                }
            }
            let cross = (t + 1..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
            match smallest_nonzero(&a, cross) {
                None => break,
                Some((i, j)) => {
                    if i != t {
                        a.swap(t, i);
                    } else {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
        }
        diag.push(a[t][t].to_big().abs());
    }
    Some(diag)
}

fn smallest_nonzero<R: Ring>(a: &[Vec<R>], cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, (usize, usize))> = None;
    for (i, j) in cells {
        if a[i][j].is_zero() {
            continue;
        }
        let k = a[i][j].abs_cmp_key();
        if best.as_ref().is_none_or(|b| k < b.0) {
            let unit = k.is_one();
            best = Some((k, (i, j)));
            if unit {
                break;
            }
        }
    }
    best.map(|b| b.1)
}

/// Turns a diagonal into a divisibility chain with the same product structure.
fn normalize(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}
