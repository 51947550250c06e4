//! Truncated modules over a category, stored degreewise up to a horizon.
//!
//! A module keeps its dimensions `d_0, ..., d_h` and the action of the
//! stored generators only: the degree-raising generators `r -> r+1` for
//! `r < h` and the endomorphism generators at each `r ≤ h`. The action of
//! any other morphism is the product along its generator word.

mod map;
mod presentation;
mod sub;

use std::sync::Arc;

use crate::category::{Category, Morphism, Step};
use crate::error::Error;
use crate::exactfield::{Field, Mat};

pub use map::ModuleMap;
pub use presentation::{parse_presentation_file, Presentation, PresentationFile, Relation, Term, FORMAT_HEADER};
pub use sub::{close_under_ends, Submodule};

/// Action of one stored generator `V_r -> V_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action<E> {
    /// Basis vector `j` goes to basis vector `map[j]` with coefficient one.
    Monomial(Vec<usize>),
    Dense(Mat<E>),
}

impl<E: Clone> Action<E> {
    pub fn apply<F: Field<Elem = E>>(&self, f: &F, target_dim: usize, v: &[E]) -> Vec<E> {
        match self {
            Action::Monomial(map) => {
                let mut out = vec![f.zero(); target_dim];
                for (j, x) in v.iter().enumerate() {
                    if !f.is_zero(x) {
                        let t = &mut out[map[j]];
                        *t = f.add(t, x);
                    }
                }
                out
            }
            Action::Dense(m) => m.mul_vec(f, v),
        }
    }

    pub fn to_mat<F: Field<Elem = E>>(&self, f: &F, rows: usize, cols: usize) -> Mat<E> {
        match self {
            Action::Monomial(map) => {
                let mut m = Mat::zeros(f, rows, cols);
                for (j, &i) in map.iter().enumerate() {
                    m.set(i, j, f.one());
                }
                m
            }
            Action::Dense(m) => m.clone(),
        }
    }
}

/// Basis bookkeeping for a free module `⊕_j M(d_j)`: at degree `t` the basis
/// is the concatenation over `j` of `C(d_j, t)` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLayout {
    degrees: Vec<usize>,
    /// `offsets[t][j]`: first basis index of summand `j` at degree `t`.
    offsets: Vec<Vec<usize>>,
}

impl FreeLayout {
    pub fn generator_degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn offset(&self, t: usize, j: usize) -> usize {
        self.offsets[t][j]
    }

    /// Index of the basis vector `(j, alpha)`.
    pub fn index(&self, cat: &Category, j: usize, alpha: &Morphism) -> usize {
        let t = alpha.target();
        self.offsets[t][j] + cat.hom(self.degrees[j], t).index_of(alpha).expect("morphism in hom-set")
    }

    /// The summand and morphism behind a basis index at degree `t`.
    pub fn locate(&self, cat: &Category, t: usize, idx: usize) -> (usize, Morphism) {
        // last summand starting at or before idx that is nonempty in degree t
        let mut j = self.offsets[t].partition_point(|&o| o <= idx) - 1;
        while idx - self.offsets[t][j] >= cat.hom_count(self.degrees[j], t) {
            j -= 1;
        }
        (j, cat.hom(self.degrees[j], t).morphisms()[idx - self.offsets[t][j]].clone())
    }

    /// Basis indices at degree `t` of the form `(j, automorphism)`: these span
    /// `P / mP` in degree `t`.
    pub fn top_indices(&self, cat: &Category, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (j, &d) in self.degrees.iter().enumerate() {
            if d == t {
                let start = self.offsets[t][j];
                out.extend(start..start + cat.hom(t, t).len());
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedModule<F: Field> {
    cat: Arc<Category>,
    field: F,
    dims: Vec<usize>,
    up: Vec<Vec<Action<F::Elem>>>,
    end: Vec<Vec<Action<F::Elem>>>,
    free: Option<FreeLayout>,
}

impl<F: Field> PartialEq for TruncatedModule<F> {
    fn eq(&self, other: &Self) -> bool {
        *self.cat == *other.cat
            && self.dims == other.dims
            && (0..self.up.len()).all(|r| {
                (0..self.up[r].len()).all(|k| {
                    self.up_action(r, k).to_mat(&self.field, self.dims[r + 1], self.dims[r])
                        == other.up_action(r, k).to_mat(&other.field, other.dims[r + 1], other.dims[r])
                })
            })
            && (0..self.end.len()).all(|r| {
                (0..self.end[r].len()).all(|k| {
                    self.end_action(r, k).to_mat(&self.field, self.dims[r], self.dims[r])
                        == other.end_action(r, k).to_mat(&other.field, other.dims[r], other.dims[r])
                })
            })
    }
}

impl<F: Field> TruncatedModule<F> {
    /// Assembles a module from raw generator actions, checking shapes.
    pub fn from_parts(
        cat: Arc<Category>,
        field: F,
        dims: Vec<usize>,
        up: Vec<Vec<Action<F::Elem>>>,
        end: Vec<Vec<Action<F::Elem>>>,
    ) -> Self {
        let h = dims.len();
        assert_eq!(up.len(), h.saturating_sub(1), "one list of raising actions per degree below the horizon");
        assert_eq!(end.len(), h, "one list of endomorphism actions per degree");
        for (r, acts) in up.iter().enumerate() {
            assert_eq!(acts.len(), cat.up_generators(r).len());
            for a in acts {
                if let Action::Dense(m) = a {
                    assert_eq!((m.rows(), m.cols()), (dims[r + 1], dims[r]));
                }
            }
        }
        for (r, acts) in end.iter().enumerate() {
            assert_eq!(acts.len(), cat.end_generators(r).len());
            for a in acts {
                if let Action::Dense(m) = a {
                    assert_eq!((m.rows(), m.cols()), (dims[r], dims[r]));
                }
            }
        }
        TruncatedModule { cat, field, dims, up, end, free: None }
    }

    pub fn zero(cat: Arc<Category>, field: F, horizon: isize) -> Self {
        let n = (horizon + 1).max(0) as usize;
        let dims = vec![0; n];
        let up = (0..n.saturating_sub(1))
            .map(|r| vec![Action::Monomial(vec![]); cat.up_generators(r).len()])
            .collect();
        let end = (0..n).map(|r| vec![Action::Monomial(vec![]); cat.end_generators(r).len()]).collect();
        TruncatedModule { cat, field, dims, up, end, free: Some(FreeLayout { degrees: vec![], offsets: vec![vec![]; n] }) }
    }

    /// The free module `M(s)` truncated at `horizon`.
    pub fn free(cat: Arc<Category>, field: F, s: usize, horizon: usize) -> Self {
        Self::free_sum(cat, field, &[s], horizon as isize)
    }

    /// `⊕_j M(degrees[j])`, basis in canonical hom order, actions by left composition.
    pub fn free_sum(cat: Arc<Category>, field: F, degrees: &[usize], horizon: isize) -> Self {
        let n = (horizon + 1).max(0) as usize;
        let mut offsets = Vec::with_capacity(n);
        let mut dims = Vec::with_capacity(n);
        for t in 0..n {
            let mut off = Vec::with_capacity(degrees.len());
            let mut acc = 0;
            for &d in degrees {
                off.push(acc);
                acc += cat.hom_count(d, t);
            }
            offsets.push(off);
            dims.push(acc);
        }
        let layout = FreeLayout { degrees: degrees.to_vec(), offsets };
        let act_by = |g: &Morphism, r: usize| -> Action<F::Elem> {
            let mut map = Vec::with_capacity(dims[r]);
            for (j, &d) in degrees.iter().enumerate() {
                for b in cat.hom(d, r).morphisms() {
                    map.push(layout.index(&cat, j, &cat.compose(g, b)));
                }
            }
            Action::Monomial(map)
        };
        let up = (0..n.saturating_sub(1))
            .map(|r| cat.up_generators(r).iter().map(|g| act_by(g, r)).collect())
            .collect();
        let end = (0..n).map(|r| cat.end_generators(r).iter().map(|g| act_by(g, r)).collect()).collect();
        TruncatedModule { cat, field, dims, up, end, free: Some(layout) }
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Top degree carried; `-1` for the empty truncation.
    pub fn horizon(&self) -> isize {
        self.dims.len() as isize - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, t: usize) -> usize {
        self.dims[t]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn free_layout(&self) -> Option<&FreeLayout> {
        self.free.as_ref()
    }

    pub fn up_action(&self, r: usize, k: usize) -> &Action<F::Elem> {
        &self.up[r][k]
    }

    pub fn end_action(&self, r: usize, k: usize) -> &Action<F::Elem> {
        &self.end[r][k]
    }

    pub fn up_count(&self, r: usize) -> usize {
        self.up[r].len()
    }

    pub fn end_count(&self, r: usize) -> usize {
        self.end[r].len()
    }

    fn check_degree(&self, t: usize) -> Result<(), Error> {
        if t >= self.dims.len() {
            return Err(Error::AboveHorizon { degree: t, horizon: self.horizon() });
        }
        Ok(())
    }

    /// Applies one generator step at degree `r`.
    pub fn apply_step(&self, r: usize, step: Step, v: &[F::Elem]) -> Vec<F::Elem> {
        match step {
            Step::Up(k) => self.up[r][k].apply(&self.field, self.dims[r + 1], v),
            Step::End(k) => self.end[r][k].apply(&self.field, self.dims[r], v),
        }
    }

    /// `alpha · v` for `v ∈ V_r`.
    pub fn act_vec(&self, alpha: &Morphism, v: &[F::Elem]) -> Result<Vec<F::Elem>, Error> {
        self.check_degree(alpha.target())?;
        assert_eq!(v.len(), self.dims[alpha.source()], "vector outside V_r");
        if let Some(layout) = &self.free {
            let f = &self.field;
            let t = alpha.target();
            let mut out = vec![f.zero(); self.dims[t]];
            for (idx, x) in v.iter().enumerate() {
                if f.is_zero(x) {
                    continue;
                }
                let (j, b) = layout.locate(&self.cat, alpha.source(), idx);
                let k = layout.index(&self.cat, j, &self.cat.compose(alpha, &b));
                out[k] = f.add(&out[k], x);
            }
            return Ok(out);
        }
        let mut cur = v.to_vec();
        let mut deg = alpha.source();
        for step in self.cat.generator_word(alpha) {
            cur = self.apply_step(deg, step, &cur);
            if let Step::Up(_) = step {
                deg += 1;
            }
        }
        Ok(cur)
    }

    /// The matrix of `alpha : r -> s` as a map `V_r -> V_s`.
    pub fn act(&self, alpha: &Morphism) -> Result<Mat<F::Elem>, Error> {
        self.check_degree(alpha.target())?;
        let f = &self.field;
        let (r, s) = (alpha.source(), alpha.target());
        let cols: Vec<Vec<F::Elem>> = (0..self.dims[r])
            .map(|j| {
                let mut e = vec![f.zero(); self.dims[r]];
                e[j] = f.one();
                self.act_vec(alpha, &e)
            })
            .collect::<Result<_, _>>()?;
        Ok(Mat::from_cols(&cols, self.dims[s]))
    }

    /// Keeps degrees `0..=horizon` (no-op when the horizon is not smaller).
    pub fn truncate(&self, horizon: isize) -> Self {
        let n = ((horizon + 1).max(0) as usize).min(self.dims.len());
        let mut m = self.clone();
        m.dims.truncate(n);
        m.up.truncate(n.saturating_sub(1));
        m.end.truncate(n);
        if let Some(l) = &mut m.free {
            l.offsets.truncate(n);
        }
        m
    }

    /// `V ⊕ W` truncated at the smaller horizon; actions are block diagonal.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, Error> {
        if *self.cat != *other.cat {
            return Err(Error::Mismatch);
        }
        let h = self.horizon().min(other.horizon());
        let (a, b) = (self.truncate(h), other.truncate(h));
        let f = &self.field;
        let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let block = |x: &Action<F::Elem>, y: &Action<F::Elem>, rows: (usize, usize), cols: (usize, usize)| {
            match (x, y) {
                (Action::Monomial(p), Action::Monomial(q)) => {
                    let mut map = p.clone();
                    map.extend(q.iter().map(|&i| i + rows.0));
                    Action::Monomial(map)
                }
                _ => {
                    let (mx, my) = (x.to_mat(f, rows.0, cols.0), y.to_mat(f, rows.1, cols.1));
                    let top = mx.hstack(&Mat::zeros(f, rows.0, cols.1));
                    let bottom = Mat::zeros(f, rows.1, cols.0).hstack(&my);
                    Action::Dense(top.vstack(&bottom))
                }
            }
        };
        let up = (0..a.up.len())
            .map(|r| {
                (0..a.up[r].len())
                    .map(|k| {
                        block(&a.up[r][k], &b.up[r][k], (a.dims[r + 1], b.dims[r + 1]), (a.dims[r], b.dims[r]))
                    })
                    .collect()
            })
            .collect();
        let end = (0..a.end.len())
            .map(|r| {
                (0..a.end[r].len())
                    .map(|k| block(&a.end[r][k], &b.end[r][k], (a.dims[r], b.dims[r]), (a.dims[r], b.dims[r])))
                    .collect()
            })
            .collect();
        let free = match (&a.free, &b.free) {
            (Some(la), Some(lb)) => {
                let mut degrees = la.degrees.clone();
                degrees.extend(&lb.degrees);
                Some(FreeLayout { degrees, offsets: Vec::new() })
            }
            _ => None,
        };
        let mut out = TruncatedModule { cat: self.cat.clone(), field: f.clone(), dims, up, end, free: None };
        if let Some(l) = free {
            // recompute the layout so the basis order matches a fresh free sum
            let fresh = TruncatedModule::free_sum(self.cat.clone(), f.clone(), &l.degrees, h);
            if fresh == out {
                out.free = fresh.free;
            }
        }
        Ok(out)
    }

    /// Every stored generator as `(degree, step)`.
    pub fn generator_steps(&self) -> Vec<(usize, Step)> {
        let mut out = Vec::new();
        for r in 0..self.dims.len() {
            if r < self.up.len() {
                out.extend((0..self.up[r].len()).map(|k| (r, Step::Up(k))));
            }
            out.extend((0..self.end[r].len()).map(|k| (r, Step::End(k))));
        }
        out
    }

    /// Matrix of one stored generator.
    pub fn step_matrix(&self, r: usize, step: Step) -> Mat<F::Elem> {
        let f = &self.field;
        match step {
            Step::Up(k) => self.up[r][k].to_mat(f, self.dims[r + 1], self.dims[r]),
            Step::End(k) => self.end[r][k].to_mat(f, self.dims[r], self.dims[r]),
        }
    }
}

#[cfg(test)]
mod tests;
