//! The shift functor `S`, the natural map `μ : V -> SV`, its kernel `K` and
//! cokernel `D`, the chain `U^0 ⊆ U^1 ⊆ ...` of iterated kernels and the
//! singular/regular decomposition.
//!
//! Every step that looks one degree up loses one degree of horizon: `SV`,
//! `KV` and `DV` are known to `h - 1`, and `U^n` to `h - n`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::category::{Category, Kind, Morphism};
use crate::error::Error;
use crate::exactfield::{kernel_basis, Field, Mat, Span};
use crate::homology::gd;
use crate::module::{Action, ModuleMap, Submodule, TruncatedModule};

/// `(SV)_t = V_{t+1}`, with `α` acting as `ι(α)`.
pub fn shift_module<F: Field>(v: &TruncatedModule<F>) -> TruncatedModule<F> {
    let cat = v.category().clone();
    let h = v.horizon();
    if h < 1 {
        return TruncatedModule::zero(cat, v.field().clone(), h - 1);
    }
    let act = |g: &Morphism| Action::Dense(v.act(&cat.embed(g)).expect("within horizon"));
    let n = h as usize;
    let up = (0..n - 1).map(|r| cat.up_generators(r).iter().map(act).collect()).collect();
    let end = (0..n).map(|r| cat.end_generators(r).iter().map(act).collect()).collect();
    TruncatedModule::from_parts(cat.clone(), v.field().clone(), v.dims()[1..].to_vec(), up, end)
}

/// `μ_V : V -> SV`, acting by `m_t` in degree `t`.
pub fn mu_map<F: Field>(v: &Arc<TruncatedModule<F>>) -> ModuleMap<F> {
    let sv = Arc::new(shift_module(v));
    mu_into(v, sv)
}

fn mu_into<F: Field>(v: &Arc<TruncatedModule<F>>, sv: Arc<TruncatedModule<F>>) -> ModuleMap<F> {
    let cat = v.category();
    let mats = (0..sv.dims().len()).map(|t| v.act(&cat.mu_witness(t)).expect("within horizon")).collect();
    ModuleMap::new(v.clone(), sv, mats).expect("μ is natural")
}

/// `0 -> KV -> V -> SV -> DV -> 0`.
#[derive(Clone, Debug)]
pub struct KeySequence<F: Field> {
    pub v: Arc<TruncatedModule<F>>,
    pub kv: Arc<TruncatedModule<F>>,
    pub sv: Arc<TruncatedModule<F>>,
    pub dv: Arc<TruncatedModule<F>>,
    pub mu: ModuleMap<F>,
    pub incl: ModuleMap<F>,
    pub proj: ModuleMap<F>,
}

impl<F: Field> KeySequence<F> {
    /// Horizon of `KV`, `SV` and `DV`.
    pub fn horizon(&self) -> isize {
        self.sv.horizon()
    }

    /// `dim KV_t - dim V_t + dim SV_t - dim DV_t`
    pub fn euler(&self, t: usize) -> isize {
        self.kv.dim(t) as isize - self.v.dim(t) as isize + self.sv.dim(t) as isize - self.dv.dim(t) as isize
    }

    /// Degrees where the alternating sum fails to vanish.
    pub fn euler_defects(&self) -> Vec<usize> {
        (0..self.sv.dims().len()).filter(|&t| self.euler(t) != 0).collect()
    }

    /// Euler identity plus injectivity of `KV -> V`, surjectivity of
    /// `SV -> DV` and the two composites being zero.
    pub fn is_exact(&self) -> bool {
        self.euler_defects().is_empty()
            && self.incl.is_injective()
            && (0..self.sv.dims().len()).all(|t| self.proj.rank(t) == self.dv.dim(t))
            && self.mu.compose(&self.incl).is_ok_and(|m| m.is_zero())
            && self.proj.compose(&self.mu).is_ok_and(|m| m.is_zero())
    }
}

pub fn derive<F: Field>(v: &Arc<TruncatedModule<F>>) -> KeySequence<F> {
    let mu = mu_map(v);
    let (kv, incl) = mu.kernel_of_map();
    let (dv, proj) = mu.cokernel();
    KeySequence { v: v.clone(), kv, sv: mu.codomain().clone(), dv, mu, incl, proj }
}

/// `U` viewed inside `SV`: degree `t` holds `U_{t+1}`.
fn shift_submodule<F: Field>(u: &Submodule<F>, sv: &Arc<TruncatedModule<F>>) -> Submodule<F> {
    let h = (u.horizon() - 1).min(sv.horizon());
    let spans = (0..(h + 1).max(0) as usize).map(|t| u.span(t + 1).clone()).collect();
    Submodule::new(Arc::new(sv.truncate(h)), spans).expect("shifted submodule is closed")
}

/// `{x ∈ V_s : μ_V(x) ∈ (SU)_s}`.
pub fn chain_step_by_membership<F: Field>(v: &Arc<TruncatedModule<F>>, u: &Submodule<F>) -> Submodule<F> {
    let mu = mu_map(v);
    mu.preimage(&shift_submodule(u, mu.codomain()))
}

/// The chain `U^0 = 0 ⊆ U^1 ⊆ ...` with `U^{n+1}/U^n = K(V/U^n)`.
#[derive(Clone, Debug)]
pub struct ChainState<F: Field> {
    pub v: Arc<TruncatedModule<F>>,
    /// `chain[n] = U^n`, known to `h - n`.
    pub chain: Vec<Submodule<F>>,
    /// Least `n` with `U^n = U^{n+1}` inside a wide enough window.
    pub stabilized_at: Option<usize>,
    /// Why stabilization could not be decided, if it was not.
    pub exhausted: Option<String>,
    /// `gd(V)` used by the window rule.
    pub gd: isize,
}

impl<F: Field> ChainState<F> {
    pub fn valid_horizon(&self, n: usize) -> isize {
        self.v.horizon() - n as isize
    }

    /// Each recorded step agrees with the membership formula.
    pub fn membership_consistent(&self) -> bool {
        self.chain.windows(2).all(|w| {
            let by_formula = chain_step_by_membership(&self.v, &w[0]);
            by_formula.truncate(w[1].horizon()) == w[1]
        })
    }
}

pub fn un_chain<F: Field>(v: &Arc<TruncatedModule<F>>, max_steps: usize) -> ChainState<F> {
    let h = v.horizon();
    let g = gd(v);
    let mut state =
        ChainState { v: v.clone(), chain: vec![Submodule::zero(v.clone())], stabilized_at: None, exhausted: None, gd: g };
    for n in 0..max_steps {
        let top = h - n as isize - 1;
        if top < 0 {
            state.exhausted = Some(format!("no degrees left after {n} steps at horizon {h}"));
            return state;
        }
        let u = &state.chain[n];
        let (q, proj) = u.quotient();
        let k = mu_map(&q).kernel();
        let next = proj.preimage(&k);
        if next == u.truncate(top) {
            if top > g {
                state.stabilized_at = Some(n);
            } else {
                state.exhausted = Some(format!(
                    "U^{n} = U^{} only checked to degree {top}, which does not exceed gd = {g}",
                    n + 1
                ));
            }
            return state;
        }
        state.chain.push(next);
    }
    state.exhausted = Some(format!("no stabilization within {max_steps} steps"));
    state
}

/// `V_sin = U^n` at the stabilization index and `V_reg = V / V_sin`.
#[derive(Clone, Debug)]
pub struct SinReg<F: Field> {
    pub stabilized_at: usize,
    /// Horizon to which `V_sin` and `V_reg` are known.
    pub valid_to: isize,
    pub sin: Submodule<F>,
    pub reg: Arc<TruncatedModule<F>>,
    pub proj: ModuleMap<F>,
    /// Dimensions of `K(V_reg)`, known to `valid_to - 1`.
    pub k_reg_dims: Vec<usize>,
}

impl<F: Field> SinReg<F> {
    pub fn k_reg_is_zero(&self) -> bool {
        self.k_reg_dims.iter().all(|&d| d == 0)
    }

    pub fn from_chain(state: &ChainState<F>) -> Result<Self, Error> {
        let n = state.stabilized_at.ok_or_else(|| {
            Error::HorizonExhausted(state.exhausted.clone().unwrap_or_else(|| "chain did not stabilize".into()))
        })?;
        let sin = state.chain[n].clone();
        let (reg, proj) = sin.quotient();
        let k_reg_dims = mu_map(&reg).kernel().dims();
        Ok(SinReg { stabilized_at: n, valid_to: state.valid_horizon(n), sin, reg, proj, k_reg_dims })
    }
}

pub fn sin_reg<F: Field>(v: &Arc<TruncatedModule<F>>, max_steps: usize) -> Result<SinReg<F>, Error> {
    SinReg::from_chain(&un_chain(v, max_steps))
}

/// Vectors of `span(basis)` killed by `a`.
fn restrict_kernel<F: Field>(f: &F, basis: Vec<Vec<F::Elem>>, a: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    if basis.is_empty() {
        return basis;
    }
    let images: Vec<Vec<F::Elem>> = basis.iter().map(|b| a.mul_vec(f, b)).collect();
    if images.iter().all(|x| x.iter().all(|e| f.is_zero(e))) {
        return basis;
    }
    let coeffs = kernel_basis(f, &Mat::from_cols(&images, a.rows()));
    coeffs
        .columns()
        .into_iter()
        .map(|c| {
            let mut out = vec![f.zero(); basis[0].len()];
            for (ci, b) in c.iter().zip(&basis) {
                if !f.is_zero(ci) {
                    for (o, x) in out.iter_mut().zip(b) {
                        *o = f.add(o, &f.mul(ci, x));
                    }
                }
            }
            out
        })
        .collect()
}

/// Powers of the ideal `I` of OI-type categories: morphisms with nonzero
/// target whose image avoids `1`.
#[derive(Debug)]
pub struct IdealPowers<'a> {
    cat: &'a Category,
    cache: HashMap<(usize, usize, usize), Vec<Morphism>>,
}

impl<'a> IdealPowers<'a> {
    pub fn new(cat: &'a Category) -> Self {
        IdealPowers { cat, cache: HashMap::new() }
    }

    /// `I^n(s, t)` by composing `n` elements of `I`; `I^0` is every morphism.
    pub fn get(&mut self, n: usize, s: usize, t: usize) -> Vec<Morphism> {
        if let Some(v) = self.cache.get(&(n, s, t)) {
            return v.clone();
        }
        let out: Vec<Morphism> = match n {
            0 => self.cat.hom(s, t).morphisms().to_vec(),
            1 => self.cat.hom(s, t).morphisms().iter().filter(|a| t > 0 && !a.images().contains(&1)).cloned().collect(),
            _ => {
                let mut set = BTreeSet::new();
                for u in s..=t {
                    let left = self.get(n - 1, s, u);
                    if left.is_empty() {
                        continue;
                    }
                    for g in self.get(1, u, t) {
                        for b in &left {
                            set.insert(self.cat.compose(&g, b));
                        }
                    }
                }
                set.into_iter().collect()
            }
        };
        self.cache.insert((n, s, t), out.clone());
        out
    }
}

/// `U^n` by annihilators: `{v ∈ V_s : α·v = 0 for all α ∈ C(s, s+n)}` for
/// FI kinds, `ann(I^n)` for OI kinds. Reported to degree `h - n`.
pub fn annihilator_oracle<F: Field>(v: &Arc<TruncatedModule<F>>, n: usize) -> Result<Submodule<F>, Error> {
    let cat = v.category().clone();
    let f = v.field();
    let h = v.horizon();
    let top = h - n as isize;
    let unit = |d: usize, i: usize| {
        let mut e = vec![f.zero(); d];
        e[i] = f.one();
        e
    };
    let mut spans = Vec::new();
    let mut ideal = IdealPowers::new(&cat);
    for s in 0..(top + 1).max(0) as usize {
        let mut basis: Vec<Vec<F::Elem>> = (0..v.dim(s)).map(|i| unit(v.dim(s), i)).collect();
        let morphisms: Vec<Morphism> = match cat.kind() {
            Kind::Fi | Kind::FiG => cat.hom(s, s + n).morphisms().to_vec(),
            Kind::Oi | Kind::OiG => (s..=h as usize).flat_map(|t| ideal.get(n, s, t)).collect(),
        };
        for a in &morphisms {
            basis = restrict_kernel(f, basis, &v.act(a)?);
        }
        spans.push(Span::from_vectors(f, v.dim(s), basis));
    }
    Submodule::new(Arc::new(v.truncate(top)), spans)
}

/// Degreewise dimensions of `SDV` and `DSV`, both known to `h - 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdProbe {
    pub sdv: Vec<usize>,
    pub dsv: Vec<usize>,
    pub valid_to: isize,
}

impl SdProbe {
    pub fn agree(&self) -> bool {
        self.sdv == self.dsv
    }
}

pub fn sd_commutation_probe<F: Field>(v: &Arc<TruncatedModule<F>>) -> SdProbe {
    let dv = derive(v).dv;
    let sdv = shift_module(&dv);
    let sv = Arc::new(shift_module(v));
    let dsv = derive(&sv).dv;
    SdProbe { sdv: sdv.dims().to_vec(), dsv: dsv.dims().to_vec(), valid_to: sdv.horizon() }
}
