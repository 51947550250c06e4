use std::path::Path;
use std::sync::Arc;

use catrep_core::category::{Category, Group, Kind};
use catrep_core::corpus::random_presentation;
use catrep_core::exactfield::{Field, FieldSpec, Fp, Rationals};
use catrep_core::homology::{
    gd, hilbert_fit, resolve, shift_projective_hypothesis, tor_from_resolution, tor_groups, verify_theorems, Style,
};
use catrep_core::module::{parse_presentation_file, PresentationFile, TruncatedModule};
use catrep_core::report::{Item, Report};
use catrep_core::shift::{annihilator_oracle, derive, sd_commutation_probe, un_chain, SinReg};
use catrep_core::Error;

pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;

pub enum Outcome {
    Text(String),
    Report(Report, u8),
}

/// Command-line settings; every field overrides the presentation header.
pub struct Job {
    pub kind: Option<Kind>,
    pub group: Option<Option<Group>>,
    pub field: Option<FieldSpec>,
    pub horizon: Option<usize>,
    pub depth: usize,
    pub max_steps: usize,
    pub seed: u64,
}

struct Loaded {
    file: PresentationFile,
    cat: Arc<Category>,
    field: FieldSpec,
    horizon: usize,
    path: String,
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals::from_env().map_err(|e| e.to_string())?;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = Fp::new(p).map_err(|e| e.to_string())?;
                $body
            }
        }
    };
}

fn seq<T: Clone + Into<serde_json::Value>>(xs: &[T]) -> serde_json::Value {
    serde_json::Value::Array(xs.iter().cloned().map(Into::into).collect())
}

fn compact(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl Job {
    fn load(&self, path: &Path) -> Result<Loaded, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut file = parse_presentation_file(&text).map_err(|e| format!("{}:{e}", path.display()))?;
        if let Some(k) = self.kind {
            file.kind = Some(k);
        }
        if let Some(g) = &self.group {
            file.group = g.clone();
        }
        if let Some(f) = self.field {
            file.field = Some(f);
        }
        if let Some(h) = self.horizon {
            file.horizon = Some(h);
        }
        let cat = Arc::new(file.category().map_err(|e| e.to_string())?);
        let field = file.field.ok_or("no field given: use --field or a `field` line")?;
        let horizon = file.horizon.ok_or("no horizon given: use --horizon or a `horizon` line")?;
        Ok(Loaded { file, cat, field, horizon, path: path.display().to_string() })
    }

    fn module<F: Field>(&self, ld: &Loaded, f: &F) -> Result<Arc<TruncatedModule<F>>, String> {
        let p = ld.file.presentation(&ld.cat, f).map_err(|e| format!("{}:{e}", ld.path))?;
        Ok(p.module(ld.cat.clone(), f, ld.horizon).0)
    }

    pub fn info(&self, path: &Path, emit: bool) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            if emit {
                let p = ld.file.presentation(&ld.cat, &f).map_err(|e| format!("{}:{e}", ld.path))?;
                return Ok(Outcome::Text(p.emit(&ld.cat, &f, ld.horizon)));
            }
            let v = self.module(&ld, &f)?;
            let item = Item::new("module", v.horizon())
                .field("category", ld.cat.spec())
                .field("field", f.spec())
                .field("generators", ld.file.generators().len())
                .field("dims", seq(v.dims()))
                .field("gd", gd(&v));
            Ok(single(item, 0))
        })
    }

    pub fn hilbert(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            Ok(match hilbert_fit(&v) {
                Ok(fit) => single(Item::hilbert(&fit), 0),
                Err(Error::Inconclusive(why)) => single(
                    Item::new("hilbert", v.horizon())
                        .field("dims", seq(v.dims()))
                        .field("gd", gd(&v))
                        .field("status", "inconclusive")
                        .field("reason", why),
                    EXIT_INCONCLUSIVE,
                ),
                Err(e) => return Err(e.to_string()),
            })
        })
    }

    pub fn homology(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            Ok(single(Item::homology(&tor_groups(&v, self.depth)), 0))
        })
    }

    pub fn decompose(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            let st = un_chain(&v, self.max_steps);
            let mut report = Report::new();
            for (n, u) in st.chain.iter().enumerate() {
                report.push(Item::new("chain", st.valid_horizon(n)).field("n", n).field("dims", u.dims()));
            }
            let code = match SinReg::from_chain(&st) {
                Ok(d) => {
                    let consistent = st.membership_consistent();
                    let sin = d.sin.dims();
                    report.push(
                        Item::new("decomposition", d.valid_to)
                            .field("summary", format!("stabilized at n={}; V_sin dims {}", d.stabilized_at, compact(&sin)))
                            .field("stabilized_at", d.stabilized_at)
                            .field("sin_dims", sin)
                            .field("reg_dims", seq(d.reg.dims()))
                            .field("k_reg_dims", d.k_reg_dims.clone())
                            .field("k_reg_zero", d.k_reg_is_zero())
                            .field("membership_consistent", consistent),
                    );
                    if d.k_reg_is_zero() && consistent {
                        0
                    } else {
                        EXIT_VIOLATION
                    }
                }
                Err(e) => {
                    report.push(
                        Item::new("decomposition", v.horizon())
                            .field("status", "inconclusive")
                            .field("reason", e.to_string()),
                    );
                    EXIT_INCONCLUSIVE
                }
            };
            Ok(Outcome::Report(report, code))
        })
    }

    pub fn shift(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            let ks = derive(&v);
            let exact = ks.is_exact();
            let item = Item::new("shift", ks.horizon())
                .field("v_dims", seq(&v.dims()[..ks.sv.dims().len()]))
                .field("kv_dims", seq(ks.kv.dims()))
                .field("sv_dims", seq(ks.sv.dims()))
                .field("dv_dims", seq(ks.dv.dims()))
                .field("euler_defects", ks.euler_defects())
                .field("exact", exact);
            Ok(single(item, if exact { 0 } else { EXIT_VIOLATION }))
        })
    }

    pub fn probe_sd(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            let p = sd_commutation_probe(&v);
            let dsv = if p.dsv.iter().all(|&d| d == 0) { "DSV = 0".to_string() } else { format!("DSV dims = {}", compact(&p.dsv)) };
            let item = Item::new("probe-sd", p.valid_to)
                .field("summary", format!("{dsv}; SDV dims = {}", compact(&p.sdv)))
                .field("sdv_dims", p.sdv.clone())
                .field("dsv_dims", p.dsv.clone())
                .field("agree", p.agree());
            Ok(single(item, 0))
        })
    }

    pub fn verify(&self, path: &Path, offset: usize, bound: usize) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            let hyp = shift_projective_hypothesis(&ld.cat, &f, bound, offset, self.depth, ld.horizon.saturating_sub(1));
            let rep = verify_theorems(&v, self.depth, offset, &hyp);
            let mut report = Report::new();
            for c in &rep.checks {
                report.push(Item::check(c));
            }
            let code = if !rep.passed() {
                EXIT_VIOLATION
            } else if rep.inconclusive() {
                EXIT_INCONCLUSIVE
            } else {
                0
            };
            Ok(Outcome::Report(report, code))
        })
    }

    pub fn oracle(&self, path: &Path) -> Result<Outcome, String> {
        let ld = self.load(path)?;
        with_field!(ld.field, f => {
            let v = self.module(&ld, &f)?;
            let st = un_chain(&v, self.max_steps);
            let mut report = Report::new();
            let mut code = 0;
            for (n, u) in st.chain.iter().enumerate().skip(1) {
                let item = Item::new("oracle", u.horizon()).field("n", n).field("chain_dims", u.dims());
                match annihilator_oracle(&v, n) {
                    Ok(a) => {
                        let a = a.truncate(u.horizon());
                        let agree = a == *u;
                        if !agree {
                            code = EXIT_VIOLATION;
                        }
                        report.push(item.field("oracle_dims", a.dims()).field("agree", agree));
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            Ok(Outcome::Report(report, code))
        })
    }

    pub fn fuzz(&self, count: usize) -> Result<Outcome, String> {
        let kind = self.kind.ok_or("fuzz needs --cat")?;
        let field = self.field.ok_or("fuzz needs --field")?;
        let cat = Arc::new(Category::new(kind, self.group.clone().flatten()).map_err(|e| e.to_string())?);
        let horizon = self.horizon.unwrap_or(6);
        with_field!(field, f => {
            let mut report = Report::new();
            let mut code = 0;
            for k in 0..count as u64 {
                let seed = self.seed.wrapping_add(k);
                let p = random_presentation(&cat, &f, seed);
                let v = p.module(cat.clone(), &f, horizon).0;
                let failures = battery(&v, self.depth, self.max_steps.min(3));
                let mut item = Item::new("fuzz", v.horizon())
                    .field("seed", seed)
                    .field("dims", seq(v.dims()))
                    .field("status", if failures.is_empty() { "pass" } else { "fail" });
                if !failures.is_empty() {
                    code = EXIT_VIOLATION;
                    item = item.field("failures", failures).field("presentation", p.emit(&cat, &f, horizon));
                }
                report.push(item);
            }
            Ok(Outcome::Report(report, code))
        })
    }
}

fn single(item: Item, code: u8) -> Outcome {
    let mut r = Report::new();
    r.push(item);
    Outcome::Report(r, code)
}

/// The invariant checks run on each random module; returns the violated ones.
fn battery<F: Field>(v: &Arc<TruncatedModule<F>>, depth: usize, steps: usize) -> Vec<String> {
    let mut bad = Vec::new();
    let ks = derive(v);
    if !ks.is_exact() {
        bad.push(format!("key sequence inexact at degrees {:?}", ks.euler_defects()));
    }
    let g = gd(v);
    if !v.is_zero() {
        let (gs, gdv) = (gd(&ks.sv), gd(&ks.dv));
        if gdv != g - 1 || gs > g || g > gs + 1 {
            bad.push(format!("gd(V)={g} gd(SV)={gs} gd(DV)={gdv}"));
        }
    }
    let a = tor_from_resolution(&resolve(v, depth, Style::Minimal));
    let b = tor_from_resolution(&resolve(v, depth, Style::Padded));
    if a.hd[0] != g {
        bad.push(format!("hd_0={} but gd={g}", a.hd[0]));
    }
    if a.h != b.h {
        bad.push("Tor differs between minimal and padded resolutions".into());
    }
    if let Ok(fit) = hilbert_fit(v) {
        if !fit.matches() || !fit.degree_within_gd() {
            bad.push(format!("Hilbert fit {fit} from {} does not hold", fit.onset));
        }
    }
    let st = un_chain(v, steps);
    for (n, u) in st.chain.iter().enumerate().skip(1) {
        if let Ok(o) = annihilator_oracle(v, n) {
            if o.truncate(u.horizon()) != *u {
                bad.push(format!("U^{n} differs from the annihilator of I^{n}"));
            }
        }
    }
    if let Ok(d) = SinReg::from_chain(&st) {
        if !d.k_reg_is_zero() {
            bad.push(format!("K(V_reg) dims {:?}", d.k_reg_dims));
        }
    }
    bad
}
