use crate::exactfield::{Field, Span};
use crate::module::TruncatedModule;

/// `V / mV` degreewise, with lifts of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct ZerothHomology<E> {
    /// `(mV)_t` for every degree.
    pub m_spans: Vec<Span<E>>,
    /// Standard basis positions of `V_t` completing `(mV)_t`.
    pub lifts: Vec<Vec<usize>>,
}

impl<E: Clone> ZerothHomology<E> {
    pub fn dims(&self) -> Vec<usize> {
        self.lifts.iter().map(|l| l.len()).collect()
    }

    /// Largest degree with a nonzero quotient, `-1` if none.
    pub fn gd(&self) -> isize {
        self.lifts.iter().rposition(|l| !l.is_empty()).map_or(-1, |t| t as isize)
    }
}

/// `m·Z_{t-1}` inside `V_t` for a submodule `Z` with the given basis of
/// `Z_{t-1}`. Because `Z` is closed under the action, the images under the
/// skip maps `t-1 -> t` already span it.
pub fn m_image<F: Field>(v: &TruncatedModule<F>, t: usize, lower: &[Vec<F::Elem>]) -> Span<F::Elem> {
    let f = v.field();
    let mut s = Span::new(v.dim(t));
    if t == 0 {
        return s;
    }
    for g in v.category().skip_maps(t - 1) {
        for z in lower {
            s.insert(f, v.act_vec(&g, z).expect("within horizon"));
            if s.dim() == v.dim(t) {
                return s;
            }
        }
    }
    s
}

/// `(mV)_t`.
pub fn m_span<F: Field>(v: &TruncatedModule<F>, t: usize) -> Span<F::Elem> {
    if t == 0 {
        return Span::new(v.dim(0));
    }
    let f = v.field();
    let n = v.dim(t - 1);
    let basis: Vec<Vec<F::Elem>> = (0..n)
        .map(|j| {
            let mut e = vec![f.zero(); n];
            e[j] = f.one();
            e
        })
        .collect();
    m_image(v, t, &basis)
}

pub fn zeroth_homology<F: Field>(v: &TruncatedModule<F>) -> ZerothHomology<F::Elem> {
    let m_spans: Vec<Span<F::Elem>> = (0..v.dims().len()).map(|t| m_span(v, t)).collect();
    let lifts = m_spans.iter().map(|s| s.complement_positions()).collect();
    ZerothHomology { m_spans, lifts }
}

/// Generating degree within the horizon; `-1` for the zero module.
pub fn gd<F: Field>(v: &TruncatedModule<F>) -> isize {
    (0..v.dims().len()).rev().find(|&t| m_span(v, t).dim() < v.dim(t)).map_or(-1, |t| t as isize)
}
