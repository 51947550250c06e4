use std::sync::Arc;

use crate::category::Step;
use crate::error::Error;
use crate::exactfield::{kernel_basis, rank, Field, Mat, Span};

use super::{Submodule, TruncatedModule};

/// A degreewise linear map `V -> W` commuting with the category action,
/// defined up to the smaller of the two horizons.
#[derive(Clone, Debug)]
pub struct ModuleMap<F: Field> {
    domain: Arc<TruncatedModule<F>>,
    codomain: Arc<TruncatedModule<F>>,
    mats: Vec<Mat<F::Elem>>,
}

pub(crate) fn truncated<F: Field>(m: &Arc<TruncatedModule<F>>, horizon: isize) -> Arc<TruncatedModule<F>> {
    if m.horizon() <= horizon {
        m.clone()
    } else {
        Arc::new(m.truncate(horizon))
    }
}

impl<F: Field> ModuleMap<F> {
    /// Checks shapes and every commutation square.
    pub fn new(
        domain: Arc<TruncatedModule<F>>,
        codomain: Arc<TruncatedModule<F>>,
        mats: Vec<Mat<F::Elem>>,
    ) -> Result<Self, Error> {
        if *domain.category() != *codomain.category() {
            return Err(Error::Mismatch);
        }
        let n = (domain.horizon().min(codomain.horizon()) + 1) as usize;
        if mats.len() != n
            || mats.iter().enumerate().any(|(t, m)| (m.rows(), m.cols()) != (codomain.dim(t), domain.dim(t)))
        {
            return Err(Error::Mismatch);
        }
        let map = ModuleMap { domain, codomain, mats };
        if map.commutation_failure().is_some() {
            return Err(Error::Mismatch);
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        domain: Arc<TruncatedModule<F>>,
        codomain: Arc<TruncatedModule<F>>,
        mats: Vec<Mat<F::Elem>>,
    ) -> Self {
        debug_assert_eq!(mats.len() as isize, domain.horizon().min(codomain.horizon()) + 1);
        ModuleMap { domain, codomain, mats }
    }

    pub fn identity(v: Arc<TruncatedModule<F>>) -> Self {
        let f = v.field().clone();
        let mats = v.dims().iter().map(|&d| Mat::identity(&f, d)).collect();
        ModuleMap { domain: v.clone(), codomain: v, mats }
    }

    pub fn zero(domain: Arc<TruncatedModule<F>>, codomain: Arc<TruncatedModule<F>>) -> Self {
        let f = domain.field().clone();
        let n = (domain.horizon().min(codomain.horizon()) + 1) as usize;
        let mats = (0..n).map(|t| Mat::zeros(&f, codomain.dim(t), domain.dim(t))).collect();
        ModuleMap { domain, codomain, mats }
    }

    pub fn domain(&self) -> &Arc<TruncatedModule<F>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<TruncatedModule<F>> {
        &self.codomain
    }

    pub fn horizon(&self) -> isize {
        self.mats.len() as isize - 1
    }

    pub fn mat(&self, t: usize) -> &Mat<F::Elem> {
        &self.mats[t]
    }

    pub fn mats(&self) -> &[Mat<F::Elem>] {
        &self.mats
    }

    pub fn apply(&self, t: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.mats[t].mul_vec(self.domain.field(), v)
    }

    /// First stored generator whose square fails to commute, if any.
    pub fn commutation_failure(&self) -> Option<(usize, Step)> {
        let f = self.domain.field();
        let n = self.mats.len();
        for (r, step) in self.domain.generator_steps() {
            let s = match step {
                Step::Up(_) => r + 1,
                Step::End(_) => r,
            };
            if s >= n {
                continue;
            }
            for j in 0..self.domain.dim(r) {
                let mut e = vec![f.zero(); self.domain.dim(r)];
                e[j] = f.one();
                let left = self.codomain.apply_step(r, step, &self.apply(r, &e));
                let right = self.apply(s, &self.domain.apply_step(r, step, &e));
                if left != right {
                    return Some((r, step));
                }
            }
        }
        None
    }

    pub fn commutes(&self) -> bool {
        self.commutation_failure().is_none()
    }

    /// `self ∘ first`, up to the smaller horizon.
    pub fn compose(&self, first: &ModuleMap<F>) -> Result<ModuleMap<F>, Error> {
        let f = self.domain.field();
        let n = self.mats.len().min(first.mats.len());
        if !Arc::ptr_eq(&first.codomain, &self.domain)
            && first.codomain.truncate(n as isize - 1) != self.domain.truncate(n as isize - 1)
        {
            return Err(Error::Mismatch);
        }
        let mats = (0..n).map(|t| self.mats[t].mul(f, &first.mats[t])).collect();
        Ok(ModuleMap::new_unchecked(first.domain.clone(), self.codomain.clone(), mats))
    }

    pub fn rank(&self, t: usize) -> usize {
        rank(self.domain.field(), &self.mats[t])
    }

    /// Least degree where the map fails to be injective.
    pub fn injectivity_failure(&self) -> Option<usize> {
        (0..self.mats.len()).find(|&t| self.rank(t) < self.domain.dim(t))
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_failure().is_none()
    }

    pub fn is_zero(&self) -> bool {
        let f = self.domain.field();
        self.mats.iter().all(|m| m.is_zero(f))
    }

    /// Degreewise kernel, a submodule of the domain truncated to the map horizon.
    pub fn kernel(&self) -> Submodule<F> {
        let f = self.domain.field();
        let spans = self
            .mats
            .iter()
            .map(|m| Span::from_vectors(f, m.cols(), kernel_basis(f, m).columns()))
            .collect();
        Submodule::from_spans_unchecked(truncated(&self.domain, self.horizon()), spans)
    }

    /// Degreewise image, a submodule of the codomain truncated to the map horizon.
    pub fn image(&self) -> Submodule<F> {
        let f = self.domain.field();
        let spans = self.mats.iter().map(|m| Span::from_vectors(f, m.rows(), m.columns())).collect();
        Submodule::from_spans_unchecked(truncated(&self.codomain, self.horizon()), spans)
    }

    /// The kernel as a module together with its inclusion.
    pub fn kernel_of_map(&self) -> (Arc<TruncatedModule<F>>, ModuleMap<F>) {
        self.kernel().module()
    }

    /// Cokernel of an injective map, with the projection from the codomain.
    pub fn quotient_by(&self) -> Result<(Arc<TruncatedModule<F>>, ModuleMap<F>), Error> {
        if let Some(t) = self.injectivity_failure() {
            return Err(Error::NotInjective(t));
        }
        Ok(self.image().quotient())
    }

    /// Cokernel of an arbitrary map.
    pub fn cokernel(&self) -> (Arc<TruncatedModule<F>>, ModuleMap<F>) {
        self.image().quotient()
    }

    /// `{v : self(v) ∈ sub}` degreewise, up to the common horizon.
    pub fn preimage(&self, sub: &Submodule<F>) -> Submodule<F> {
        let f = self.domain.field();
        let h = self.horizon().min(sub.horizon());
        let spans = (0..(h + 1) as usize)
            .map(|t| {
                let span = sub.span(t);
                let cols: Vec<Vec<F::Elem>> =
                    self.mats[t].columns().into_iter().map(|c| span.quotient_coords(f, c)).collect();
                let q = Mat::from_cols(&cols, self.codomain.dim(t) - span.dim());
                Span::from_vectors(f, self.domain.dim(t), kernel_basis(f, &q).columns())
            })
            .collect();
        Submodule::from_spans_unchecked(truncated(&self.domain, h), spans)
    }
}
