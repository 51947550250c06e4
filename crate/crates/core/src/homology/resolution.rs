use std::sync::Arc;

use crate::category::{Morphism, Step};
use crate::exactfield::{kernel_from_echelon, row_reduce, Field, Mat, Span};
use crate::module::{close_under_ends, FreeLayout, TruncatedModule};

use super::zeroth::m_image;

/// How generators of each syzygy module are picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// Fewest generators: a vector is skipped once it lies in `mZ_t` plus the
    /// endomorphism orbit span of the generators already taken.
    Minimal,
    /// The minimal choice plus a repeat of the first generator at every step,
    /// so the reduced differentials are nonzero.
    Padded,
}

/// One step `P^i -> Z^i` of a resolution.
#[derive(Clone, Debug)]
pub struct ResolutionStep<F: Field> {
    /// The free module `P^i`, truncated at the resolution horizon.
    pub free: Arc<TruncatedModule<F>>,
    /// Image of generator `j` in the previous free module (or in the target
    /// for `i = 0`), at degree `free.generator_degrees()[j]`.
    pub images: Vec<Vec<F::Elem>>,
    /// `Z^{i+1} = ker(P^i -> P^{i-1})` per degree; empty for the last step.
    pub syzygy: Vec<Span<F::Elem>>,
    /// `rank(P^i -> P^{i-1})_t` per degree, when computed.
    pub ranks: Vec<usize>,
    /// `(P^i/m)_t -> (P^{i-1}/m)_t` per degree; zero-row blocks for `i = 0`.
    pub reduced: Vec<Mat<F::Elem>>,
}

impl<F: Field> ResolutionStep<F> {
    pub fn generator_degrees(&self) -> &[usize] {
        self.layout().generator_degrees()
    }

    pub fn layout(&self) -> &FreeLayout {
        self.free.free_layout().expect("free module")
    }

    /// `gd(P^i)`.
    pub fn gd(&self) -> isize {
        self.generator_degrees().iter().max().map_or(-1, |&d| d as isize)
    }
}

/// A free resolution `... -> P^1 -> P^0 -> V` truncated at the horizon of `V`.
/// Steps `0..=depth` carry kernels; step `depth + 1` only its generators and
/// the reduced differential, which is all that `H_depth` needs.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub target: Arc<TruncatedModule<F>>,
    pub steps: Vec<ResolutionStep<F>>,
    pub depth: usize,
    pub style: Style,
    /// Degrees `(i, t)` where the image of `P^i` falls short of `Z^i`.
    pub exactness_defects: Vec<(usize, usize)>,
}

impl<F: Field> Resolution<F> {
    pub fn horizon(&self) -> isize {
        self.target.horizon()
    }

    /// Least `k` with `P^k = 0` within the horizon, if reached.
    pub fn length(&self) -> Option<usize> {
        self.steps.iter().position(|s| s.images.is_empty())
    }

    /// `Z^i` per degree: the target for `i = 0`, otherwise the kernel recorded
    /// with step `i - 1`.
    pub fn syzygy(&self, i: usize) -> Vec<Span<F::Elem>> {
        if i == 0 {
            let f = self.target.field();
            return self.target.dims().iter().map(|&d| Span::full(f, d)).collect();
        }
        self.steps[i - 1].syzygy.clone()
    }

    /// `gd(Z^i)`.
    pub fn syzygy_gd(&self, i: usize) -> isize {
        let amb: &TruncatedModule<F> = if i == 0 { &self.target } else { &self.steps[i - 1].free };
        let z = self.syzygy(i);
        (0..z.len())
            .rev()
            .find(|&t| {
                let m = if t == 0 { Span::new(z[0].ambient()) } else { m_image(amb, t, z[t - 1].basis()) };
                m.dim() < z[t].dim()
            })
            .map_or(-1, |t| t as isize)
    }

    /// Image of generator `j` of `P^i` written as `(coefficient, morphism,
    /// generator of P^{i-1})`; `None` for `i = 0`, whose images live in the target.
    pub fn differential_terms(&self, i: usize, j: usize) -> Option<Vec<(F::Elem, Morphism, usize)>> {
        if i == 0 {
            return None;
        }
        let prev = &self.steps[i - 1];
        let d = self.steps[i].generator_degrees()[j];
        let f = self.target.field();
        let cat = self.target.category();
        let v = &self.steps[i].images[j];
        Some(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(idx, x)| {
                    let (g, m) = prev.layout().locate(cat, d, idx);
                    (x.clone(), m, g)
                })
                .collect(),
        )
    }

    /// The full differential `P^i_t -> P^{i-1}_t` (or `-> V_t`), recomputed.
    pub fn differential(&self, i: usize, t: usize) -> Mat<F::Elem> {
        let amb: &TruncatedModule<F> = if i == 0 { &self.target } else { &self.steps[i - 1].free };
        differential_at(amb, &self.steps[i].free, &self.steps[i].images, t)
    }
}

/// The images `α·z` for `α ∈ hom(d, t)` in canonical hom order, advanced
/// one degree at a time.
struct Orbit<E> {
    d: usize,
    t: usize,
    vecs: Vec<Vec<E>>,
}

impl<E: Clone> Orbit<E> {
    fn start<F: Field<Elem = E>>(a: &TruncatedModule<F>, d: usize, z: &[E]) -> Self {
        let cat = a.category();
        let hom = cat.hom(d, d);
        let mut slot: Vec<Option<Vec<E>>> = vec![None; hom.len()];
        let id = cat.identity(d);
        let k = hom.index_of(&id).expect("identity");
        slot[k] = Some(z.to_vec());
        let vecs = close_orbit(a, d, d, slot, vec![(id, k)]);
        Orbit { d, t: d, vecs }
    }

    fn advance<F: Field<Elem = E>>(&mut self, a: &TruncatedModule<F>) {
        let cat = a.category();
        let (d, t) = (self.d, self.t + 1);
        let hom = cat.hom(d, t);
        let lower = cat.hom(d, t - 1);
        let mut slot: Vec<Option<Vec<E>>> = vec![None; hom.len()];
        let mut frontier = Vec::new();
        for (kk, u) in cat.up_generators(t - 1).iter().enumerate() {
            for (idx, alpha) in lower.morphisms().iter().enumerate() {
                let beta = cat.compose(u, alpha);
                let k = hom.index_of(&beta).expect("in hom-set");
                if slot[k].is_none() {
                    slot[k] = Some(a.apply_step(t - 1, Step::Up(kk), &self.vecs[idx]));
                    frontier.push((beta, k));
                }
            }
        }
        self.vecs = close_orbit(a, d, t, slot, frontier);
        self.t = t;
    }
}

fn close_orbit<F: Field>(
    a: &TruncatedModule<F>,
    d: usize,
    t: usize,
    mut slot: Vec<Option<Vec<F::Elem>>>,
    mut frontier: Vec<(Morphism, usize)>,
) -> Vec<Vec<F::Elem>> {
    let cat = a.category();
    let hom = cat.hom(d, t);
    let ends = cat.end_generators(t);
    while let Some((alpha, k)) = frontier.pop() {
        for (kk, e) in ends.iter().enumerate() {
            let beta = cat.compose(e, &alpha);
            let k2 = hom.index_of(&beta).expect("in hom-set");
            if slot[k2].is_none() {
                slot[k2] = Some(a.apply_step(t, Step::End(kk), slot[k].as_ref().expect("reached")));
                frontier.push((beta, k2));
            }
        }
    }
    slot.into_iter().map(|s| s.expect("every morphism is reached")).collect()
}

/// Walks the differential `P_t -> A_t` degree by degree.
struct DifferentialWalk<'a, F: Field> {
    a: &'a TruncatedModule<F>,
    degrees: Vec<usize>,
    images: &'a [Vec<F::Elem>],
    orbits: Vec<Option<Orbit<F::Elem>>>,
    next: usize,
}

impl<'a, F: Field> DifferentialWalk<'a, F> {
    fn new(a: &'a TruncatedModule<F>, p: &TruncatedModule<F>, images: &'a [Vec<F::Elem>]) -> Self {
        let degrees = p.free_layout().expect("free module").generator_degrees().to_vec();
        let orbits = degrees.iter().map(|_| None).collect();
        DifferentialWalk { a, degrees, images, orbits, next: 0 }
    }

    /// The matrix in the next degree.
    fn step(&mut self) -> Mat<F::Elem> {
        let t = self.next;
        self.next += 1;
        let mut cols: Vec<Vec<F::Elem>> = Vec::new();
        for (j, &d) in self.degrees.iter().enumerate() {
            if d == t {
                self.orbits[j] = Some(Orbit::start(self.a, d, &self.images[j]));
            } else if d < t {
                self.orbits[j].as_mut().expect("started").advance(self.a);
            }
            if let Some(o) = &self.orbits[j] {
                cols.extend(o.vecs.iter().cloned());
            }
        }
        Mat::from_cols(&cols, self.a.dim(t))
    }
}

fn differential_at<F: Field>(
    a: &TruncatedModule<F>,
    p: &TruncatedModule<F>,
    images: &[Vec<F::Elem>],
    t: usize,
) -> Mat<F::Elem> {
    let mut walk = DifferentialWalk::new(a, p, images);
    for _ in 0..t {
        walk.step();
    }
    walk.step()
}

/// Generators of the submodule `Z ⊆ A` given degreewise.
fn choose_generators<F: Field>(a: &TruncatedModule<F>, z: &[Span<F::Elem>], style: Style) -> Vec<(usize, Vec<F::Elem>)> {
    let f = a.field();
    let mut gens = Vec::new();
    for t in 0..z.len() {
        if z[t].dim() == 0 {
            continue;
        }
        let mut s = if t == 0 { Span::new(z[0].ambient()) } else { m_image(a, t, z[t - 1].basis()) };
        for b in z[t].basis() {
            if s.dim() == z[t].dim() {
                break;
            }
            if s.contains(f, b) {
                continue;
            }
            gens.push((t, b.clone()));
            let mut orbit = Span::from_vectors(f, z[t].ambient(), [b.clone()]);
            close_under_ends(a, t, &mut orbit);
            for v in orbit.basis() {
                s.insert(f, v.clone());
            }
        }
    }
    if style == Style::Padded {
        if let Some(first) = gens.first().cloned() {
            gens.push(first);
        }
    }
    gens
}

/// `(P^i/m)_t -> (P^{i-1}/m)_t`: the block of the differential between
/// generator-degree basis vectors. The source block at `t` consists of the
/// endomorphism orbits of the images of generators of degree `t`.
fn reduced_block<F: Field>(
    prev: Option<&TruncatedModule<F>>,
    a: &TruncatedModule<F>,
    p: &TruncatedModule<F>,
    images: &[Vec<F::Elem>],
    t: usize,
) -> Mat<F::Elem> {
    let f = a.field();
    let layout = p.free_layout().expect("free module");
    let rows: Vec<usize> = match prev {
        Some(q) => q.free_layout().expect("free module").top_indices(q.category(), t),
        None => Vec::new(),
    };
    let mut cols = Vec::new();
    for (j, &d) in layout.generator_degrees().iter().enumerate() {
        if d == t {
            for w in Orbit::start(a, d, &images[j]).vecs {
                cols.push(rows.iter().map(|&r| w[r].clone()).collect::<Vec<_>>());
            }
        }
    }
    if cols.is_empty() {
        return Mat::zeros(f, rows.len(), 0);
    }
    Mat::from_cols(&cols, rows.len())
}

/// Builds `P^0, ..., P^{depth+1}` with kernels through `Z^{depth+1}`.
pub fn resolve<F: Field>(v: &Arc<TruncatedModule<F>>, depth: usize, style: Style) -> Resolution<F> {
    let cat = v.category().clone();
    let f = v.field().clone();
    let h = v.horizon();
    let mut steps: Vec<ResolutionStep<F>> = Vec::new();
    let mut defects = Vec::new();
    let mut z: Vec<Span<F::Elem>> = v.dims().iter().map(|&d| Span::full(&f, d)).collect();
    for i in 0..=depth + 1 {
        let amb: Arc<TruncatedModule<F>> = if i == 0 { v.clone() } else { steps[i - 1].free.clone() };
        let gens = choose_generators(&amb, &z, style);
        let degrees: Vec<usize> = gens.iter().map(|g| g.0).collect();
        let images: Vec<Vec<F::Elem>> = gens.into_iter().map(|g| g.1).collect();
        let free = Arc::new(TruncatedModule::free_sum(cat.clone(), f.clone(), &degrees, h));
        let prev = if i == 0 { None } else { Some(&*amb) };
        let reduced = (0..v.dims().len()).map(|t| reduced_block(prev, &amb, &free, &images, t)).collect();
        let mut syzygy = Vec::new();
        let mut ranks = Vec::new();
        if i <= depth {
            let mut walk = DifferentialWalk::new(&amb, &free, &images);
            for (t, zt) in z.iter().enumerate().take(v.dims().len()) {
                let d = walk.step();
                let ech = row_reduce(&f, &d);
                ranks.push(ech.rank());
                if ech.rank() != zt.dim() {
                    defects.push((i, t));
                }
                let k = kernel_from_echelon(&f, &ech, d.cols());
                syzygy.push(Span::from_vectors(&f, d.cols(), k.columns()));
            }
        }
        let done = images.is_empty();
        steps.push(ResolutionStep { free, images, syzygy: syzygy.clone(), ranks, reduced });
        if done {
            break;
        }
        z = syzygy;
    }
    Resolution { target: v.clone(), steps, depth, style, exactness_defects: defects }
}
