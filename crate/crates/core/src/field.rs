//! Exact linear algebra over prime fields GF(p).
//!
//! Matrices are dense and row-major. Every operation is deterministic: row
//! reduction always picks the leftmost pivot column and the topmost usable
//! row, so identical inputs give identical outputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum 2^16")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {op} of {lhs_rows}x{lhs_cols} and {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular")]
    Singular,
    #[error("operands live over different fields (GF({0}) vs GF({1}))")]
    FieldMismatch(u32, u32),
    #[error("ragged row {row}: expected {expected} entries, found {found}")]
    Ragged { row: usize, expected: usize, found: usize },
}

/// The prime field GF(p), validated once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > MAX_MODULUS {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem {
            value: self.reduce(v),
            field: self,
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Iterates every element `0, 1, …, p-1`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// A single element of GF(p) carrying its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    field: PrimeField,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FieldElem> {
        self.field.inv(self.value).map(|value| FieldElem {
            value,
            field: self.field,
        })
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                assert_eq!(self.field, rhs.field, "mixed-field arithmetic");
                FieldElem {
                    value: self.field.$method(self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}

elem_binop!(Add, add);
elem_binop!(Sub, sub);
elem_binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// Dense row-major matrix over GF(p). `0×n` and `n×0` shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.field, self.to_rows())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from raw entries, reducing each one mod p.
    pub fn from_entries(field: PrimeField, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        FieldMatrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&v| field.reduce(v)).collect(),
        }
    }

    /// Builds a matrix from already-reduced values.
    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < field.p));
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from nested rows. An empty slice gives a `0×0` matrix.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// A single column vector.
    pub fn column(field: PrimeField, entries: &[u32]) -> Self {
        Self::from_raw(field, entries.len(), 1, entries.iter().map(|&v| v % field.p).collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.p);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &FieldMatrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field.p, other.field.p));
        }
        Ok(())
    }

    fn mismatch(&self, op: &'static str, other: &FieldMatrix) -> MatrixError {
        MatrixError::ShapeMismatch {
            op,
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: other.rows,
            rhs_cols: other.cols,
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Exact product `self · rhs`.
    pub fn matmul(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, MatrixError> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(self.mismatch("matmul", rhs));
        }
        let p = self.field.p as u64;
        let mut out = vec![0u32; self.rows * rhs.cols];
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (slot, &b) in acc.iter_mut().zip(brow) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out[i * rhs.cols + j] = v as u32;
            }
        }
        Ok(FieldMatrix::from_raw(self.field, self.rows, rhs.cols, out))
    }

    /// Product for operands whose shapes are known to agree.
    pub(crate) fn mul_unchecked(&self, rhs: &FieldMatrix) -> FieldMatrix {
        self.matmul(rhs).expect("shape-checked product")
    }

    fn zip_with(
        &self,
        rhs: &FieldMatrix,
        op: &'static str,
        f: impl Fn(PrimeField, u32, u32) -> u32,
    ) -> Result<FieldMatrix, MatrixError> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(self.mismatch(op, rhs));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(self.field, a, b))
            .collect();
        Ok(FieldMatrix::from_raw(self.field, self.rows, self.cols, data))
    }

    pub fn add(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, MatrixError> {
        self.zip_with(rhs, "add", PrimeField::add)
    }

    pub fn sub(&self, rhs: &FieldMatrix) -> Result<FieldMatrix, MatrixError> {
        self.zip_with(rhs, "sub", PrimeField::sub)
    }

    pub fn scale(&self, c: u32) -> FieldMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&v| f.mul(v, c % f.p)).collect();
        FieldMatrix::from_raw(f, self.rows, self.cols, data)
    }

    /// `self^n` for square matrices; `self^0` is the identity.
    pub fn pow(&self, mut n: u64) -> Result<FieldMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = FieldMatrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Concatenates matrices side by side. All parts must share `rows`.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[&FieldMatrix]) -> FieldMatrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = FieldMatrix::zeros(field, rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..m.cols {
                    out.data[r * cols + offset + c] = m.get(r, c);
                }
            }
            offset += m.cols;
        }
        out
    }

    /// Stacks matrices vertically. All parts must share `cols`.
    pub fn vstack(field: PrimeField, cols: usize, parts: &[&FieldMatrix]) -> FieldMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        FieldMatrix::from_raw(field, rows, cols, data)
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &FieldMatrix) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and the ordered pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == rows {
                break;
            }
            let Some(pr) = (lead..rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != lead {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, lead * cols + k);
                }
            }
            let inv = f.inv(self.data[lead * cols + c]).expect("nonzero pivot");
            for k in c..cols {
                let v = self.data[lead * cols + k];
                self.data[lead * cols + k] = f.mul(v, inv);
            }
            for r in 0..rows {
                if r == lead {
                    continue;
                }
                let factor = self.data[r * cols + c];
                if factor == 0 {
                    continue;
                }
                for k in c..cols {
                    let sub = f.mul(factor, self.data[lead * cols + k]);
                    self.data[r * cols + k] = f.sub(self.data[r * cols + k], sub);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}` ordered by free column index.
    pub fn nullspace_basis(&self) -> Vec<Vec<u32>> {
        self.nullspace_with_free().0
    }

    /// Nullspace basis together with the free columns that index it. The
    /// basis vector for free column `f` has a 1 at `f` and 0 at every other
    /// free column, so coordinates of a solution are its free-column values.
    pub(crate) fn nullspace_with_free(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1 % f.p;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect();
        (basis, free)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Two-sided inverse of a square matrix.
    pub fn invert(&self) -> Result<FieldMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = FieldMatrix::hstack(self.field, n, &[self, &FieldMatrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Err(MatrixError::Singular);
        }
        let mut inv = FieldMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Column-echelon basis of the column space, returned as the columns of
    /// a `rows × rank` matrix. Each basis column has a 1 at its pivot
    /// coordinate and 0 at the other basis columns' pivot coordinates.
    pub fn column_space(&self) -> Subspace {
        Subspace::span(self)
    }
}

/// A subspace of `GF(p)^ambient` held in reduced column-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn span(m: &FieldMatrix) -> Subspace {
        let (r, pivots) = m.transpose().rref();
        let k = pivots.len();
        let mut basis = FieldMatrix::zeros(m.field, m.rows, k);
        for j in 0..k {
            for i in 0..m.rows {
                basis.set(i, j, r.get(j, i));
            }
        }
        Subspace { basis, pivots }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            basis: FieldMatrix::zeros(field, ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Subspace {
        Subspace {
            basis: FieldMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows
    }

    /// Basis vectors as matrix columns.
    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    /// Pivot coordinates, one per basis column.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.basis.field;
        let coords: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        for (i, &vi) in v.iter().enumerate().take(self.ambient()) {
            let mut acc = 0;
            for (j, &c) in coords.iter().enumerate() {
                acc = f.add(acc, f.mul(c, self.basis.get(i, j)));
            }
            if acc != vi {
                return None;
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates (as columns) of every column of `m`, assumed inside the span.
    pub fn coordinates_of_columns(&self, m: &FieldMatrix) -> Option<FieldMatrix> {
        let mut out = FieldMatrix::zeros(m.field, self.dim(), m.cols);
        for c in 0..m.cols {
            let coords = self.coordinates(&m.column_vec(c))?;
            for (r, v) in coords.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        Some(out)
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let f = self.basis.field;
        Subspace::span(&FieldMatrix::hstack(f, self.ambient(), &[&self.basis, &other.basis]))
    }

    /// Standard basis vectors `e_k` for the non-pivot coordinates `k`; they
    /// span a complement of this subspace.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient()];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient()).filter(|&k| !used[k]).collect()
    }

    /// Matrix of the projection `ambient → ambient / self`, written in the
    /// complement coordinates.
    pub fn quotient_map(&self) -> FieldMatrix {
        let f = self.basis.field;
        let comp = self.complement_coordinates();
        let n = self.ambient();
        // v ↦ v − Σ v[pivot_j]·b_j, then read the complement coordinates.
        let mut q = FieldMatrix::zeros(f, comp.len(), n);
        for (row, &k) in comp.iter().enumerate() {
            q.set(row, k, 1 % f.p);
            for (j, &pj) in self.pivots.iter().enumerate() {
                let b = self.basis.get(k, j);
                if b != 0 {
                    q.set(row, pj, f.sub(q.get(row, pj), b));
                }
            }
        }
        q
    }

    /// Matrix whose columns are the standard vectors spanning the complement.
    pub fn complement_section(&self) -> FieldMatrix {
        let f = self.basis.field;
        let comp = self.complement_coordinates();
        let mut s = FieldMatrix::zeros(f, self.ambient(), comp.len());
        for (j, &k) in comp.iter().enumerate() {
            s.set(k, j, 1 % f.p);
        }
        s
    }
}
