//! Exact linear algebra over a [`Field`].
//!
//! [`Matrix`] is a dense row-major matrix used for group elements, form
//! matrices and small graded pieces. [`SparseEchelon`] is an incremental
//! row-echelon basis for the large, very sparse systems that show up when
//! spanning ideals degree by degree.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a.clone() * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b).collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c).collect() }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Stacks matrices with equal column counts.
    pub fn vstack(parts: &[Matrix<F>], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self[(r, j)].clone() * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let t = f.clone() * &self[(r, j)];
                    self[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column of the RREF.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let mut det = F::one();
        let n = self.rows;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a[(c, c)].clone();
            det *= &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() * &inv;
                for j in c..n {
                    let t = f.clone() * &a[(c, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&-F::one())
    }

    /// Parses a row-major array of rational strings (or integers) from JSON.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let rows = value.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            let mut r = Vec::with_capacity(row.len());
            for v in row {
                let q: BigRational = match v {
                    serde_json::Value::String(s) => parse_rational(s)?,
                    serde_json::Value::Number(n) if n.is_i64() => parse_rational(&n.to_string())?,
                    _ => return Err(Error::Parse(format!("matrix entry {v} is not a rational string"))),
                };
                r.push(F::from_rational(&q).ok_or_else(|| {
                    Error::Parse(format!("entry {v} is undefined in {}", F::descriptor()))
                })?);
            }
            out.push(r);
        }
        Self::from_rows(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| serde_json::Value::Array(self.row(i).iter().map(|v| v.to_string().into()).collect()))
                .collect(),
        )
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Sparse vector: strictly increasing column indices with nonzero values.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `a + c * b` for sparse vectors.
pub fn sparse_axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.clone() * &b[j].1));
            j += 1;
        } else {
            let v = a[i].1.clone() + c.clone() * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Converts an arbitrary list of (index, value) pairs into a [`SparseVec`].
pub fn sparse_from_pairs<F: Field>(pairs: impl IntoIterator<Item = (usize, F)>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (i, v) in pairs {
        *acc.entry(i).or_insert_with(F::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Incremental echelon basis of a subspace of `F^cols`.
///
/// Each stored row is normalised to leading coefficient 1, where the leading
/// entry is the one with the *largest* column index. Callers order columns so
/// that the entries they want eliminated first get the largest indices.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F: Field> {
    cols: usize,
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(cols: usize) -> Self {
        SparseEchelon { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduces `v` against the stored rows until its leading column is free.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((lead, c)) = v.last().cloned() {
            match self.pivots.get(&lead) {
                Some(row) => v = sparse_axpy(&v, &-c, row),
                None => break,
            }
        }
        v
    }

    /// Fully reduces `v`: no stored pivot column survives in the result.
    pub fn reduce_full(&self, v: SparseVec<F>) -> SparseVec<F> {
        let mut v = v;
        let mut k = v.len();
        while k > 0 {
            k -= 1;
            let (col, c) = v[k].clone();
            if let Some(row) = self.pivots.get(&col) {
                v = sparse_axpy(&v, &-c, row);
                // entries above `col` are untouched, so resume just below it
                k = v.partition_point(|(i, _)| *i < col);
            }
        }
        v
    }

    /// Inserts a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        debug_assert!(v.last().map_or(true, |(i, _)| *i < self.cols));
        let v = self.reduce(v);
        match v.last() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let inv = c.inv().expect("nonzero leading entry");
                let v = v.into_iter().map(|(i, x)| (i, x * &inv)).collect();
                self.pivots.insert(lead, v);
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduced echelon rows keyed by pivot column: every row has a 1 at its
    /// pivot and zeros at all other pivot columns.
    pub fn into_reduced(self) -> BTreeMap<usize, SparseVec<F>> {
        let mut done: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (col, row) in self.pivots {
            let mut row = row;
            // entries below the pivot may hit earlier (already reduced) pivots
            let mut k = row.len().saturating_sub(1);
            while k > 0 {
                k -= 1;
                let (c, x) = row[k].clone();
                if let Some(prev) = done.get(&c) {
                    row = sparse_axpy(&row, &-x, prev);
                    k = row.partition_point(|(i, _)| *i < c);
                }
            }
            done.insert(col, row);
        }
        done
    }
}
