//! Dense matrices over a [`Field`] and the elimination routines built on them.
//!
//! Matrices act on column vectors: a map `k^n -> k^m` is an `m x n` matrix.

use crate::error::Error;
use crate::exactfield::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Mat { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Mat { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(cols: &[Vec<E>], rows: usize) -> Self {
        let n = cols.len();
        let mut data = Vec::with_capacity(rows * n);
        for i in 0..rows {
            for c in cols {
                assert_eq!(c.len(), rows, "ragged column");
                data.push(c[i].clone());
            }
        }
        Mat { rows, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

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
        Mat { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            for &j in idx {
                data.push(self.get(i, j).clone());
            }
        }
        Mat { rows: self.rows, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Mat { rows: idx.len(), cols: self.cols, data }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Mat { rows: self.rows, cols, data }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let na = f.neg(a);
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !f.is_zero(b) {
                        f.sub_mul_assign(o, &na, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub reduced: Mat<E>,
    pub pivots: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination. Zero rows are kept at the bottom, so the result
/// has the same shape as the input.
pub fn row_reduce<F: Field>(f: &F, a: &Mat<F::Elem>) -> Echelon<F::Elem> {
    let mut m = a.clone();
    let pivots = reduce_in_place(f, &mut m);
    Echelon { reduced: m, pivots }
}

fn reduce_in_place<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(found) = (prow..rows).find(|&i| !f.is_zero(m.get(i, col))) else {
            continue;
        };
        if found != prow {
            for j in col..cols {
                m.data.swap(found * cols + j, prow * cols + j);
            }
        }
        let inv = f.inv(m.get(prow, col)).expect("nonzero pivot");
        for j in col..cols {
            let v = f.mul(m.get(prow, j), &inv);
            m.set(prow, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(prow)[col..].to_vec();
        for i in 0..rows {
            if i == prow {
                continue;
            }
            let factor = m.get(i, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            let row = &mut m.data[i * cols + col..(i + 1) * cols];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    f.sub_mul_assign(x, &factor, p);
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, a: &Mat<F::Elem>) -> usize {
    row_reduce(f, a).rank()
}

/// Columns spanning `ker(a)`, one per free column of the echelon form.
///
/// Column `k` has a one at the `k`-th free index and zeros at every other free
/// index, so the coordinates of a kernel vector are its entries at the free
/// indices (see [`free_columns`]).
pub fn kernel_basis<F: Field>(f: &F, a: &Mat<F::Elem>) -> Mat<F::Elem> {
    let ech = row_reduce(f, a);
    kernel_from_echelon(f, &ech, a.cols())
}

pub fn free_columns(pivots: &[usize], cols: usize) -> Vec<usize> {
    let mut free = Vec::with_capacity(cols - pivots.len());
    let mut p = pivots.iter().peekable();
    for c in 0..cols {
        if p.peek() == Some(&&c) {
            p.next();
        } else {
            free.push(c);
        }
    }
    free
}

pub(crate) fn kernel_from_echelon<F: Field>(
    f: &F,
    ech: &Echelon<F::Elem>,
    cols: usize,
) -> Mat<F::Elem> {
    let free = free_columns(&ech.pivots, cols);
    let mut k = Mat::zeros(f, cols, free.len());
    for (idx, &fc) in free.iter().enumerate() {
        k.set(fc, idx, f.one());
        for (i, &pc) in ech.pivots.iter().enumerate() {
            let v = ech.reduced.get(i, fc);
            if !f.is_zero(v) {
                k.set(pc, idx, f.neg(v));
            }
        }
    }
    k
}

/// Solves `a x = b`; returns [`Error::NotInSpan`] when `b` is outside the
/// column span of `a`.
pub fn membership<F: Field>(f: &F, a: &Mat<F::Elem>, b: &[F::Elem]) -> Result<Vec<F::Elem>, Error> {
    assert_eq!(a.rows(), b.len(), "right-hand side has the wrong length");
    let bcol = Mat::from_cols(&[b.to_vec()], a.rows());
    let aug = a.hstack(&bcol);
    let ech = row_reduce(f, &aug);
    let n = a.cols();
    if ech.pivots.last() == Some(&n) {
        return Err(Error::NotInSpan);
    }
    let mut x = vec![f.zero(); n];
    for (i, &pc) in ech.pivots.iter().enumerate() {
        x[pc] = ech.reduced.get(i, n).clone();
    }
    Ok(x)
}

/// Standard basis vectors completing a basis of `span(s)` to a basis of `k^n`,
/// where `n = s.rows()`. The chosen vectors sit at the non-pivot positions of
/// the echelon form of `s^T`.
pub fn complement_basis<F: Field>(f: &F, s: &Mat<F::Elem>) -> Mat<F::Elem> {
    let n = s.rows();
    let ech = row_reduce(f, &s.transpose());
    let free = free_columns(&ech.pivots, n);
    let mut c = Mat::zeros(f, n, free.len());
    for (idx, &i) in free.iter().enumerate() {
        c.set(i, idx, f.one());
    }
    c
}
