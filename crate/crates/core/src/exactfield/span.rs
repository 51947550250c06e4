//! Incrementally maintained subspaces in reduced echelon form.

use crate::exactfield::{free_columns, Field, Mat};

/// A subspace of `k^n` stored as the rows of its reduced row-echelon basis,
/// ordered by pivot. Two `Span`s of the same subspace compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span<E> {
    ambient: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Span<E> {
    pub fn new(ambient: usize) -> Self {
        Span { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.rows
    }

    /// Basis vectors as the columns of an `ambient x dim` matrix.
    pub fn basis_matrix(&self) -> Mat<E> {
        Mat::from_cols(&self.rows, self.ambient)
    }

    /// Positions not occupied by pivots; the corresponding standard basis
    /// vectors form a complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        free_columns(&self.pivots, self.ambient)
    }

    pub fn from_vectors<F: Field<Elem = E>>(f: &F, ambient: usize, vs: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut s = Span::new(ambient);
        for v in vs {
            s.insert(f, v);
        }
        s
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![f.zero(); ambient];
                v[i] = f.one();
                v
            })
            .collect();
        Span { ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Remainder of `v` after eliminating every pivot entry.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: Vec<E>) -> Vec<E> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !f.is_zero(r) {
                    f.sub_mul_assign(x, &c, r);
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v.to_vec()).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside the ambient space");
        let mut v = self.reduce(f, v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        for x in v.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !f.is_zero(r) {
                    f.sub_mul_assign(x, &c, r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` in the echelon basis; meaningful only for `v` in the span.
    pub fn coords(&self, v: &[E]) -> Vec<E> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// The vector with the given coordinates.
    pub fn combine<F: Field<Elem = E>>(&self, f: &F, coords: &[E]) -> Vec<E> {
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            if f.is_zero(c) {
                continue;
            }
            let nc = f.neg(c);
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    f.sub_mul_assign(o, &nc, r);
                }
            }
        }
        out
    }

    /// Coordinates of the image of `v` in `k^n / span`, read off at the
    /// complement positions.
    pub fn quotient_coords<F: Field<Elem = E>>(&self, f: &F, v: Vec<E>) -> Vec<E> {
        let r = self.reduce(f, v);
        self.complement_positions().into_iter().map(|i| r[i].clone()).collect()
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Span<E>) -> bool {
        self.rows.iter().all(|r| other.contains(f, r))
    }

    /// Closes the span under the given linear maps (each `ambient x ambient`),
    /// applied as black boxes to vectors.
    pub fn close_under<F, M>(&mut self, f: &F, maps: &[M])
    where
        F: Field<Elem = E>,
        M: Fn(&[E]) -> Vec<E>,
    {
        if maps.is_empty() {
            return;
        }
        let mut queue: Vec<Vec<E>> = self.rows.clone();
        while let Some(v) = queue.pop() {
            for m in maps {
                let w = m(&v);
                let r = self.reduce(f, w);
                if r.iter().any(|x| !f.is_zero(x)) {
                    queue.push(r.clone());
                    self.insert(f, r);
                }
            }
        }
    }
}
