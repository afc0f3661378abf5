//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices are plain row-major storage; every operation takes the field as
//! an explicit context. Elimination is deterministic: the pivot for a column
//! is the first row at or below the current position with a nonzero entry.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Matrix::filled(rows, columns.len(), zero);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Columns `range` of `self`.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self, zero: E) -> Self {
        let mut m = Matrix::filled(self.rows + other.rows, self.cols + other.cols, zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn map<T>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(f: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| f.random(rng)).collect(),
        }
    }

    /// Uniformly random among invertible `n x n` matrices, with its inverse.
    pub fn random_invertible<F: Field<Elem = E>, R: Rng + ?Sized>(f: &F, n: usize, rng: &mut R) -> (Self, Self) {
        loop {
            let m = Self::random(f, n, n, rng);
            if let Some(inv) = m.inverse(f) {
                return (m, inv);
            }
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scaled<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        self.map(|x| f.mul(c, x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                f.axpy(&mut out.data[lo..hi], a, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "mul_vec shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        rref(f, self).rank()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(f, n)).expect("same rows");
        let r = rref_limited(f, &aug, n);
        if r.rank() < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select_columns(&cols))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| f.format(x)).collect())
            .collect()
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Rref<F::Elem> {
    rref_limited(f, m, m.cols)
}

/// Row reduction that only places pivots in the first `limit` columns; the
/// remaining columns are carried along as an augmented block.
pub fn rref_limited<F: Field>(f: &F, m: &Matrix<F::Elem>, limit: usize) -> Rref<F::Elem> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let limit = limit.min(cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut scratch: Vec<F::Elem> = Vec::with_capacity(cols);
    let mut support: Vec<usize> = Vec::with_capacity(cols);
    for c in 0..limit {
        if r == rows {
            break;
        }
        // Sparsest candidate row, to limit fill-in.
        let Some(p) = (r..rows)
            .filter(|&i| !f.is_zero(a.get(i, c)))
            .min_by_key(|&i| a.data[i * cols + c..(i + 1) * cols].iter().filter(|x| !f.is_zero(x)).count())
        else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("nonzero pivot");
        f.scale(&mut a.data[r * cols + c..(r + 1) * cols], &inv);
        scratch.clear();
        scratch.extend_from_slice(&a.data[r * cols + c..(r + 1) * cols]);
        // Homotopy systems are sparse: update only the pivot row's support.
        support.clear();
        support.extend((0..scratch.len()).filter(|&j| !f.is_zero(&scratch[j])));
        let sparse = support.len() * 4 < scratch.len();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            let neg = f.neg(&factor);
            let row = &mut a.data[i * cols + c..(i + 1) * cols];
            if sparse {
                for &j in &support {
                    row[j] = f.add(&row[j], &f.mul(&neg, &scratch[j]));
                }
            } else {
                f.axpy(row, &neg, &scratch);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

/// Basis of the null space, one vector per free column in increasing order.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let r = rref(f, m);
    kernel_from_rref(f, &r, m.cols)
}

fn kernel_from_rref<F: Field>(f: &F, r: &Rref<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &p) in r.pivots.iter().enumerate() {
            v[p] = f.neg(r.matrix.get(row, free));
        }
        out.push(v);
    }
    out
}

/// Particular solution of `m x = b` with free variables set to zero.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let bcol = Matrix::from_vec(m.rows, 1, b.to_vec())?;
    let aug = m.hstack(&bcol)?;
    let r = rref_limited(f, &aug, m.cols);
    for i in r.rank()..m.rows {
        if !f.is_zero(r.matrix.get(i, m.cols)) {
            return Ok(None);
        }
    }
    let mut x = vec![f.zero(); m.cols];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix.get(row, m.cols).clone();
    }
    Ok(Some(x))
}

/// Basis of the projection of `ker m` onto the first `split` coordinates.
pub fn solve_and_project<F: Field>(f: &F, m: &Matrix<F::Elem>, split: usize) -> Result<Vec<Vec<F::Elem>>> {
    Ok(ProjectedSolver::new(f, m, split)?.projection().to_vec())
}

/// Elimination of `m = [P | Q]` (with `P` the first `split` columns) that
/// keeps enough state to answer, for a `p` in the projection of the kernel,
/// which `q` completes it: `P p + Q q = 0`.
#[derive(Debug, Clone)]
pub struct ProjectedSolver<F: Field> {
    field: F,
    split: usize,
    /// Reduced `[Q | P]`, pivots only among the `Q` columns.
    reduced: Rref<F::Elem>,
    projection: Vec<Vec<F::Elem>>,
    q_cols: usize,
}

impl<F: Field> ProjectedSolver<F> {
    pub fn new(f: &F, m: &Matrix<F::Elem>, split: usize) -> Result<Self> {
        if split > m.cols {
            return Err(Error::Dimension(format!("split {split} exceeds {} columns", m.cols)));
        }
        let q_cols = m.cols - split;
        let order: Vec<usize> = (split..m.cols).chain(0..split).collect();
        let reordered = m.select_columns(&order);
        let reduced = rref_limited(f, &reordered, q_cols);
        // Rows with no Q pivot constrain P alone.
        let rank = reduced.rank();
        let p_cols: Vec<usize> = (q_cols..m.cols).collect();
        let constraint_rows: Vec<usize> = (rank..m.rows).collect();
        let constraints = reduced.matrix.select_rows(&constraint_rows).select_columns(&p_cols);
        let projection = kernel_basis(f, &constraints);
        Ok(ProjectedSolver {
            field: f.clone(),
            split,
            reduced,
            projection,
            q_cols,
        })
    }

    pub fn projection(&self) -> &[Vec<F::Elem>] {
        &self.projection
    }

    /// The completion `q` (free coordinates zero) of a vector `p` in the projection.
    pub fn complete(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        assert_eq!(p.len(), self.split);
        let mut q = vec![f.zero(); self.q_cols];
        for (row, &piv) in self.reduced.pivots.iter().enumerate() {
            let mut acc = f.zero();
            for (k, pk) in p.iter().enumerate() {
                let c = self.reduced.matrix.get(row, self.q_cols + k);
                if !f.is_zero(c) && !f.is_zero(pk) {
                    acc = f.add(&acc, &f.mul(c, pk));
                }
            }
            q[piv] = f.neg(&acc);
        }
        q
    }
}

/// Coordinates with respect to a family of linearly independent vectors.
///
/// Stores a left inverse so membership tests and coordinate extraction are
/// a single matrix-vector product.
#[derive(Debug, Clone)]
pub struct Coordinates<F: Field> {
    field: F,
    dim: usize,
    basis: Matrix<F::Elem>,
    left_inverse: Matrix<F::Elem>,
}

impl<F: Field> Coordinates<F> {
    /// `vectors` must be linearly independent, each of length `dim`.
    pub fn new(f: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        let basis = Matrix::from_columns(dim, vectors, f.zero());
        let k = vectors.len();
        // Rows of the basis matrix that are independent give an invertible square block.
        let r = rref(f, &basis.transpose());
        if r.rank() != k {
            return Err(Error::Dimension("coordinate family is linearly dependent".into()));
        }
        let square = basis.select_rows(&r.pivots);
        let inv = square.inverse(f).expect("independent rows");
        let mut left_inverse = Matrix::zeros(f, k, dim);
        for (c, &row) in r.pivots.iter().enumerate() {
            for i in 0..k {
                left_inverse.set(i, row, inv.get(i, c).clone());
            }
        }
        Ok(Coordinates {
            field: f.clone(),
            dim,
            basis,
            left_inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &Matrix<F::Elem> {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let c = self.left_inverse.mul_vec(&self.field, v);
        let back = self.basis.mul_vec(&self.field, &c);
        if back.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates of a vector already known to lie in the span.
    pub fn coords_unchecked(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.left_inverse.mul_vec(&self.field, v)
    }
}

/// Incrementally grown basis of a subspace in echelon form.
#[derive(Debug, Clone)]
pub struct EchelonSpan<F: Field> {
    field: F,
    dim: usize,
    /// Normalised rows with their pivot column.
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonSpan<F> {
    pub fn new(f: &F, dim: usize) -> Self {
        EchelonSpan {
            field: f.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// The echelon rows, in insertion order.
    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !f.is_zero(&w[*p]) {
                let c = f.neg(&w[*p]);
                f.axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        f.scale(&mut w, &inv);
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = f.neg(&row[p]);
                f.axpy(row, &c, &w);
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Span that remembers how each reduced row was built from the inserted
/// vectors, so members can be written in terms of those vectors.
#[derive(Debug, Clone)]
pub struct TrackedSpan<F: Field> {
    field: F,
    dim: usize,
    items: usize,
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> TrackedSpan<F> {
    pub fn new(f: &F, dim: usize) -> Self {
        TrackedSpan {
            field: f.clone(),
            dim,
            items: 0,
            rows: Vec::new(),
        }
    }

    /// Number of accepted (independent) vectors.
    pub fn len(&self) -> usize {
        self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items == 0
    }

    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut c = vec![f.zero(); self.items];
        for (p, row, combo) in &self.rows {
            if !f.is_zero(&w[*p]) {
                let factor = w[*p].clone();
                f.axpy(&mut w, &f.neg(&factor), row);
                f.axpy(&mut c, &factor, combo);
            }
        }
        (w, c)
    }

    /// Coefficients expressing `v` through the accepted vectors, if in the span.
    pub fn express(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let (w, c) = self.reduce(v);
        if w.iter().all(|x| self.field.is_zero(x)) {
            Some(c)
        } else {
            None
        }
    }

    /// Accepts `v` when it is independent of the span; returns its index.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<usize> {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let (mut w, c) = self.reduce(v);
        let p = w.iter().position(|x| !f.is_zero(x))?;
        let inv = f.inv(&w[p]).expect("nonzero");
        f.scale(&mut w, &inv);
        let idx = self.items;
        self.items += 1;
        for (_, _, combo) in self.rows.iter_mut() {
            combo.push(f.zero());
        }
        let mut combo: Vec<F::Elem> = c.iter().map(|x| f.neg(x)).collect();
        combo.push(f.one());
        f.scale(&mut combo, &inv);
        self.rows.push((p, w, combo));
        Some(idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(f: &PrimeField, rows: &[&[i64]]) -> Matrix<u64> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect(), cols).unwrap()
    }

    fn det2(f: &PrimeField, a: &Matrix<u64>) -> u64 {
        f.sub(&f.mul(a.get(0, 0), a.get(1, 1)), &f.mul(a.get(0, 1), a.get(1, 0)))
    }

    #[test]
    fn identity_and_zero() {
        let f = gf(101);
        let id = Matrix::identity(&f, 3);
        let r = rref(&f, &id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank(), 3);
        let z = Matrix::zeros(&f, 2, 4);
        let r = rref(&f, &z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rank_over_gf5_matches_determinant() {
        let f = gf(5);
        let a = m(&f, &[&[1, 2], &[3, 1]]);
        // 1*1 - 2*3 = -5, which vanishes mod 5.
        assert_eq!(det2(&f, &a), 0);
        assert_eq!(rref(&f, &a).rank(), 1);
        let b = m(&f, &[&[1, 2], &[3, 2]]);
        assert_ne!(det2(&f, &b), 0);
        assert_eq!(rref(&f, &b).rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(101);
        assert!(kernel_basis(&f, &Matrix::identity(&f, 4)).is_empty());
        let k = kernel_basis(&f, &Matrix::zeros(&f, 3, 3));
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let q = RationalField;
        let one = q.one();
        let row = Matrix::from_rows(vec![vec![one.clone(), one.clone()]], 2).unwrap();
        let k = kernel_basis(&q, &row);
        assert_eq!(k, vec![vec![q.from_i64(-1), q.from_i64(1)]]);
        assert_eq!(row.mul_vec(&q, &k[0]), vec![q.zero()]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(101);
        let b = vec![3, 4, 5];
        assert_eq!(solve(&f, &Matrix::identity(&f, 3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&f, &Matrix::zeros(&f, 3, 3), &b).unwrap(), None);
        assert!(solve(&f, &Matrix::identity(&f, 2), &b).is_err());
    }

    #[test]
    fn planted_solution_gf101() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = Matrix::random(&f, 5, 7, &mut rng);
            let x0: Vec<u64> = (0..7).map(|_| f.random(&mut rng)).collect();
            let b = a.mul_vec(&f, &x0);
            let x = solve(&f, &a, &b).unwrap().expect("planted system is solvable");
            assert_eq!(a.mul_vec(&f, &x), b);
        }
    }

    #[test]
    fn projection_trivial_cases() {
        let f = gf(101);
        let p = solve_and_project(&f, &Matrix::zeros(&f, 2, 5), 3).unwrap();
        assert_eq!(p.len(), 3);
        let p = solve_and_project(&f, &Matrix::identity(&f, 4), 2).unwrap();
        assert!(p.is_empty());
        assert!(solve_and_project(&f, &Matrix::identity(&f, 4), 5).is_err());
    }

    /// All vectors of GF(2)^n.
    fn all_vectors(n: usize) -> Vec<Vec<u64>> {
        (0..1u32 << n).map(|mask| (0..n).map(|i| ((mask >> i) & 1) as u64).collect()).collect()
    }

    #[test]
    fn projection_matches_exhaustive_enumeration_gf2() {
        let f = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..30 {
            let cols = 4 + trial % 5;
            let rows = 2 + trial % 4;
            let split = 1 + trial % 3;
            let a = Matrix::random(&f, rows, cols, &mut rng);
            let mut brute = EchelonSpan::new(&f, split);
            for v in all_vectors(cols) {
                if a.mul_vec(&f, &v).iter().all(|&x| x == 0) {
                    brute.insert(&v[..split]);
                }
            }
            let solver = ProjectedSolver::new(&f, &a, split).unwrap();
            assert_eq!(solver.projection().len(), brute.dim());
            for pvec in solver.projection() {
                assert!(brute.contains(pvec));
                let q = solver.complete(pvec);
                let full: Vec<u64> = pvec.iter().chain(&q).cloned().collect();
                assert!(a.mul_vec(&f, &full).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = gf(101);
        let vs = vec![vec![1, 2, 0, 3], vec![0, 1, 1, 1]];
        let c = Coordinates::new(&f, 4, &vs).unwrap();
        let v = vec![2, 5, 1, 7];
        assert_eq!(c.coords(&v), Some(vec![2, 1]));
        assert_eq!(c.coords(&[1, 0, 0, 0]), None);
    }

    #[test]
    fn inverse_of_random_matrix() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Matrix::random(&f, 6, 6, &mut rng);
        if let Some(ai) = a.inverse(&f) {
            assert_eq!(a.mul(&f, &ai), Matrix::identity(&f, 6));
        }
        assert!(Matrix::<u64>::zeros(&f, 2, 2).inverse(&f).is_none());
    }

    #[test]
    fn tracked_span_expresses_members() {
        let f = gf(101);
        let mut t = TrackedSpan::new(&f, 3);
        assert_eq!(t.insert(&[1, 1, 0]), Some(0));
        assert_eq!(t.insert(&[2, 2, 0]), None);
        assert_eq!(t.insert(&[0, 1, 1]), Some(1));
        let c = t.express(&[3, 5, 2]).unwrap();
        assert_eq!(c, vec![3, 2]);
        assert!(t.express(&[0, 0, 1]).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix_strategy() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
            (1usize..6, 1usize..7).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0u64..7, r * c)))
        }

        proptest! {
            #[test]
            fn rref_is_idempotent((r, c, data) in matrix_strategy()) {
                let f = gf(7);
                let a = Matrix::from_vec(r, c, data).unwrap();
                let once = rref(&f, &a);
                let twice = rref(&f, &once.matrix);
                prop_assert_eq!(&once.matrix, &twice.matrix);
                prop_assert_eq!(once.pivots, twice.pivots);
            }

            #[test]
            fn kernel_is_sound_and_complete((r, c, data) in matrix_strategy()) {
                let f = gf(7);
                let a = Matrix::from_vec(r, c, data).unwrap();
                let k = kernel_basis(&f, &a);
                for v in &k {
                    prop_assert!(a.mul_vec(&f, v).iter().all(|&x| x == 0));
                }
                prop_assert_eq!(k.len() + a.rank(&f), c);
                let km = Matrix::from_columns(c, &k, 0);
                prop_assert_eq!(km.rank(&f), k.len());
            }

            #[test]
            fn solve_is_sound((r, c, data) in matrix_strategy(), b in proptest::collection::vec(0u64..7, 6)) {
                let f = gf(7);
                let a = Matrix::from_vec(r, c, data).unwrap();
                let b = &b[..r];
                if let Some(x) = solve(&f, &a, b).unwrap() {
                    prop_assert_eq!(a.mul_vec(&f, &x), b.to_vec());
                }
            }
        }
    }
}
