use std::sync::Arc;

use crate::category::Step;
use crate::error::Error;
use crate::exactfield::{Field, Mat, Span};

use super::{Action, ModuleMap, TruncatedModule};

/// A submodule given degreewise by echelon-form subspaces of an ambient module.
#[derive(Clone, Debug)]
pub struct Submodule<F: Field> {
    ambient: Arc<TruncatedModule<F>>,
    spans: Vec<Span<F::Elem>>,
}

impl<F: Field> PartialEq for Submodule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.spans == other.spans
    }
}

impl<F: Field> Submodule<F> {
    /// Checks that the spans have the right ambient sizes and are closed under the action.
    pub fn new(ambient: Arc<TruncatedModule<F>>, spans: Vec<Span<F::Elem>>) -> Result<Self, Error> {
        if spans.len() != ambient.dims().len() || spans.iter().enumerate().any(|(t, s)| s.ambient() != ambient.dim(t))
        {
            return Err(Error::Mismatch);
        }
        let sub = Submodule { ambient, spans };
        if !sub.is_closed() {
            return Err(Error::Mismatch);
        }
        Ok(sub)
    }

    pub(crate) fn from_spans_unchecked(ambient: Arc<TruncatedModule<F>>, spans: Vec<Span<F::Elem>>) -> Self {
        debug_assert_eq!(spans.len(), ambient.dims().len());
        Submodule { ambient, spans }
    }

    pub fn zero(ambient: Arc<TruncatedModule<F>>) -> Self {
        let spans = ambient.dims().iter().map(|&d| Span::new(d)).collect();
        Submodule { ambient, spans }
    }

    pub fn whole(ambient: Arc<TruncatedModule<F>>) -> Self {
        let f = ambient.field().clone();
        let spans = ambient.dims().iter().map(|&d| Span::full(&f, d)).collect();
        Submodule { ambient, spans }
    }

    /// The smallest submodule containing the given `(degree, vector)` pairs.
    /// Generators above the ambient horizon are ignored.
    pub fn generated_by(ambient: Arc<TruncatedModule<F>>, gens: &[(usize, Vec<F::Elem>)]) -> Self {
        let f = ambient.field().clone();
        let mut spans: Vec<Span<F::Elem>> = Vec::with_capacity(ambient.dims().len());
        for t in 0..ambient.dims().len() {
            let mut s = Span::new(ambient.dim(t));
            if t > 0 {
                for k in 0..ambient.up_count(t - 1) {
                    for b in spans[t - 1].basis() {
                        s.insert(&f, ambient.apply_step(t - 1, Step::Up(k), b));
                    }
                }
            }
            for (d, v) in gens {
                if *d == t {
                    s.insert(&f, v.clone());
                }
            }
            close_under_ends(&ambient, t, &mut s);
            spans.push(s);
        }
        Submodule { ambient, spans }
    }

    pub fn ambient(&self) -> &Arc<TruncatedModule<F>> {
        &self.ambient
    }

    pub fn horizon(&self) -> isize {
        self.spans.len() as isize - 1
    }

    pub fn spans(&self) -> &[Span<F::Elem>] {
        &self.spans
    }

    pub fn span(&self, t: usize) -> &Span<F::Elem> {
        &self.spans[t]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(|s| s.dim()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(|s| s.dim() == 0)
    }

    pub fn contains(&self, t: usize, v: &[F::Elem]) -> bool {
        self.spans[t].contains(self.ambient.field(), v)
    }

    /// Whether every stored generator maps the submodule into itself.
    pub fn is_closed(&self) -> bool {
        self.ambient.generator_steps().into_iter().all(|(r, step)| {
            let s = if let Step::Up(_) = step { r + 1 } else { r };
            self.spans[r].basis().iter().all(|b| self.contains(s, &self.ambient.apply_step(r, step, b)))
        })
    }

    /// Degreewise inclusion, up to the smaller horizon.
    pub fn is_subset_of(&self, other: &Submodule<F>) -> bool {
        let f = self.ambient.field();
        self.spans.iter().zip(&other.spans).all(|(a, b)| a.is_subspace_of(f, b))
    }

    pub fn sum(&self, other: &Submodule<F>) -> Submodule<F> {
        let f = self.ambient.field();
        let spans = self
            .spans
            .iter()
            .zip(&other.spans)
            .map(|(a, b)| {
                let mut s = a.clone();
                for v in b.basis() {
                    s.insert(f, v.clone());
                }
                s
            })
            .collect();
        Submodule { ambient: super::map::truncated(&self.ambient, self.horizon().min(other.horizon())), spans }
    }

    pub fn truncate(&self, horizon: isize) -> Submodule<F> {
        let n = ((horizon + 1).max(0) as usize).min(self.spans.len());
        Submodule { ambient: super::map::truncated(&self.ambient, n as isize - 1), spans: self.spans[..n].to_vec() }
    }

    /// The submodule as a module in its echelon basis, with the inclusion map.
    pub fn module(&self) -> (Arc<TruncatedModule<F>>, ModuleMap<F>) {
        let amb = &self.ambient;
        let f = amb.field();
        let dims: Vec<usize> = self.dims();
        let induced = |r: usize, s: usize, step: Step| -> Action<F::Elem> {
            let cols: Vec<Vec<F::Elem>> =
                self.spans[r].basis().iter().map(|b| self.spans[s].coords(&amb.apply_step(r, step, b))).collect();
            Action::Dense(Mat::from_cols(&cols, dims[s]))
        };
        let n = dims.len();
        let up = (0..n.saturating_sub(1))
            .map(|r| (0..amb.up_count(r)).map(|k| induced(r, r + 1, Step::Up(k))).collect())
            .collect();
        let end = (0..n).map(|r| (0..amb.end_count(r)).map(|k| induced(r, r, Step::End(k))).collect()).collect();
        let sub = Arc::new(TruncatedModule::from_parts(amb.category().clone(), f.clone(), dims, up, end));
        let mats = self.spans.iter().map(|s| s.basis_matrix()).collect();
        (sub.clone(), ModuleMap::new_unchecked(sub, amb.clone(), mats))
    }

    /// `ambient / self` with basis the standard vectors off the pivots, and the projection.
    pub fn quotient(&self) -> (Arc<TruncatedModule<F>>, ModuleMap<F>) {
        let amb = &self.ambient;
        let f = amb.field();
        let comps: Vec<Vec<usize>> = self.spans.iter().map(|s| s.complement_positions()).collect();
        let dims: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        let unit = |d: usize, i: usize| {
            let mut e = vec![f.zero(); d];
            e[i] = f.one();
            e
        };
        let induced = |r: usize, s: usize, step: Step| -> Action<F::Elem> {
            let cols: Vec<Vec<F::Elem>> = comps[r]
                .iter()
                .map(|&i| self.spans[s].quotient_coords(f, amb.apply_step(r, step, &unit(amb.dim(r), i))))
                .collect();
            Action::Dense(Mat::from_cols(&cols, dims[s]))
        };
        let n = dims.len();
        let up = (0..n.saturating_sub(1))
            .map(|r| (0..amb.up_count(r)).map(|k| induced(r, r + 1, Step::Up(k))).collect())
            .collect();
        let end = (0..n).map(|r| (0..amb.end_count(r)).map(|k| induced(r, r, Step::End(k))).collect()).collect();
        let quo = Arc::new(TruncatedModule::from_parts(amb.category().clone(), f.clone(), dims.clone(), up, end));
        let mats = (0..n)
            .map(|t| {
                let cols: Vec<Vec<F::Elem>> =
                    (0..amb.dim(t)).map(|j| self.spans[t].quotient_coords(f, unit(amb.dim(t), j))).collect();
                Mat::from_cols(&cols, dims[t])
            })
            .collect();
        (quo.clone(), ModuleMap::new_unchecked(amb.clone(), quo, mats))
    }
}

/// Closes `s ⊆ V_t` under the endomorphism generators at degree `t`.
pub fn close_under_ends<F: Field>(v: &TruncatedModule<F>, t: usize, s: &mut Span<F::Elem>) {
    let maps: Vec<_> = (0..v.end_count(t)).map(|k| move |x: &[F::Elem]| v.apply_step(t, Step::End(k), x)).collect();
    s.close_under(v.field(), &maps);
}
