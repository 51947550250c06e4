//! Finite presentations and the versioned text format
//!
//! ```text
//! catrep-presentation 1
//! category oi_g
//! group z/2
//! field fp:101
//! horizon 6
//! gen x deg 1
//! rel 2: 1*1->2:[2](0)@x + -1*1->2:[1](1)@x
//! ```
//!
//! `group table <n>` is followed by `n` lines `row a_0 ... a_{n-1}`.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::sync::Arc;

use num::bigint::BigInt;
use num::One;

use crate::category::{Category, Group, Kind, Morphism};
use crate::error::Error;
use crate::exactfield::{parse_ratio, Field, FieldSpec};

use super::{FreeLayout, ModuleMap, Submodule, TruncatedModule};

pub const FORMAT_HEADER: &str = "catrep-presentation 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<E> {
    pub coeff: E,
    pub morphism: Morphism,
    pub generator: usize,
}

/// `Σ coeff · (morphism, generator)` in degree `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<E> {
    pub target: usize,
    pub terms: Vec<Term<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<E> {
    generators: Vec<(String, usize)>,
    relations: Vec<Relation<E>>,
}

impl<E: Clone> Presentation<E> {
    pub fn new(generators: Vec<(String, usize)>) -> Self {
        Presentation { generators, relations: Vec::new() }
    }

    /// One generator `x{j}` per listed degree.
    pub fn with_degrees(degrees: &[usize]) -> Self {
        Presentation::new(degrees.iter().enumerate().map(|(j, &d)| (format!("x{j}"), d)).collect())
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.1).collect()
    }

    pub fn relations(&self) -> &[Relation<E>] {
        &self.relations
    }

    pub fn add_relation(&mut self, rel: Relation<E>) -> Result<(), Error> {
        for t in &rel.terms {
            let Some((name, d)) = self.generators.get(t.generator) else {
                return Err(Error::InvalidMorphism(format!("no generator number {}", t.generator)));
            };
            if t.morphism.source() != *d || t.morphism.target() != rel.target {
                return Err(Error::InvalidMorphism(format!(
                    "term on `{name}` (degree {d}) must be a morphism {d}->{}",
                    rel.target
                )));
            }
        }
        self.relations.push(rel);
        Ok(())
    }

    /// The relation as a vector in the covering free module.
    pub fn relation_vector<F: Field<Elem = E>>(
        &self,
        cat: &Category,
        f: &F,
        layout: &FreeLayout,
        free_dim: usize,
        rel: &Relation<E>,
    ) -> Vec<E> {
        let mut v = vec![f.zero(); free_dim];
        for t in &rel.terms {
            let i = layout.index(cat, t.generator, &t.morphism);
            v[i] = f.add(&v[i], &t.coeff);
        }
        v
    }

    /// The covering free module and the submodule generated by the relations.
    pub fn relation_submodule<F: Field<Elem = E>>(&self, cat: Arc<Category>, f: &F, horizon: usize) -> Submodule<F> {
        let free = Arc::new(TruncatedModule::free_sum(cat.clone(), f.clone(), &self.generator_degrees(), horizon as isize));
        let layout = free.free_layout().expect("free module").clone();
        let gens: Vec<(usize, Vec<E>)> = self
            .relations
            .iter()
            .filter(|r| r.target <= horizon)
            .map(|r| (r.target, self.relation_vector(&cat, f, &layout, free.dim(r.target), r)))
            .collect();
        Submodule::generated_by(free, &gens)
    }

    /// The presented module truncated at `horizon`, with the projection from the free cover.
    pub fn module<F: Field<Elem = E>>(
        &self,
        cat: Arc<Category>,
        f: &F,
        horizon: usize,
    ) -> (Arc<TruncatedModule<F>>, ModuleMap<F>) {
        if self.relations.is_empty() {
            let free = Arc::new(TruncatedModule::free_sum(cat, f.clone(), &self.generator_degrees(), horizon as isize));
            return (free.clone(), ModuleMap::identity(free));
        }
        self.relation_submodule(cat, f, horizon).quotient()
    }

    /// Normalized text: canonical morphisms, like terms merged, zero terms and
    /// empty relations dropped.
    pub fn emit<F: Field<Elem = E>>(&self, cat: &Category, f: &F, horizon: usize) -> String {
        let mut out = String::new();
        writeln!(out, "{FORMAT_HEADER}").unwrap();
        writeln!(out, "category {}", cat.kind().name()).unwrap();
        match cat.group() {
            None => writeln!(out, "group none").unwrap(),
            Some(g @ Group::Cyclic(_)) => writeln!(out, "group {}", g.spec()).unwrap(),
            Some(Group::Table { mul, .. }) => {
                writeln!(out, "group table {}", mul.len()).unwrap();
                for row in mul {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "row {}", cells.join(" ")).unwrap();
                }
            }
        }
        writeln!(out, "field {}", f.spec()).unwrap();
        writeln!(out, "horizon {horizon}").unwrap();
        for (name, d) in &self.generators {
            writeln!(out, "gen {name} deg {d}").unwrap();
        }
        for rel in &self.relations {
            let mut merged: Vec<Term<E>> = Vec::new();
            for t in &rel.terms {
                match merged.iter_mut().find(|m| m.generator == t.generator && m.morphism == t.morphism) {
                    Some(m) => m.coeff = f.add(&m.coeff, &t.coeff),
                    None => merged.push(t.clone()),
                }
            }
            merged.retain(|t| !f.is_zero(&t.coeff));
            if merged.is_empty() {
                continue;
            }
            let terms: Vec<String> = merged
                .iter()
                .map(|t| {
                    format!(
                        "{}*{}@{}",
                        f.format(&t.coeff),
                        cat.format_morphism(&t.morphism),
                        self.generators[t.generator].0
                    )
                })
                .collect();
            writeln!(out, "rel {}: {}", rel.target, terms.join(" + ")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RawTerm {
    coeff: (BigInt, BigInt),
    coeff_col: usize,
    morphism: String,
    morphism_col: usize,
    generator: String,
    generator_col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RawRelation {
    line: usize,
    target: usize,
    terms: Vec<RawTerm>,
}

/// A parsed presentation file whose morphisms and coefficients are still
/// uninterpreted, so the header can be overridden before they are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub kind: Option<Kind>,
    pub group: Option<Group>,
    pub field: Option<FieldSpec>,
    pub horizon: Option<usize>,
    generators: Vec<(String, usize)>,
    relations: Vec<RawRelation>,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn parse_group(spec: &str, lines: &mut dyn Iterator<Item = (usize, &str)>, line: usize, col: usize) -> Result<Option<Group>, Error> {
    let spec = spec.trim();
    if spec == "none" {
        return Ok(None);
    }
    if let Some(m) = spec.strip_prefix("z/") {
        let m: usize = m.parse().map_err(|_| perr(line, col, format!("bad cyclic order `{m}`")))?;
        return Group::cyclic(m).map(Some).map_err(|e| perr(line, col, e.to_string()));
    }
    if let Some(n) = spec.strip_prefix("table") {
        let n: usize = n.trim().parse().map_err(|_| perr(line, col, "expected `table <order>`"))?;
        let mut mul = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, text) = lines.next().ok_or_else(|| perr(line, col, "missing `row` lines"))?;
            let rest = text.trim_start().strip_prefix("row").ok_or_else(|| perr(ln, 1, "expected `row`"))?;
            let row: Vec<usize> = rest
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| perr(ln, 1, format!("bad table entry `{x}`"))))
                .collect::<Result<_, _>>()?;
            mul.push(row);
        }
        return Group::from_table(mul).map(Some).map_err(|e| perr(line, col, e.to_string()));
    }
    Err(perr(line, col, format!("unknown group `{spec}`")))
}

/// Column (1-based) of `sub` inside `line`, where `sub` is a subslice of `line`.
fn col_of(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_term(line_no: usize, line: &str, text: &str) -> Result<RawTerm, Error> {
    let t = text.trim();
    let col = col_of(line, t);
    if t.is_empty() {
        return Err(perr(line_no, col_of(line, text), "empty term"));
    }
    let (coeff, coeff_col, rest) = match t.split_once('*') {
        Some((c, rest)) => {
            let c = c.trim();
            let r = parse_ratio(c).ok_or_else(|| perr(line_no, col, format!("bad coefficient `{c}`")))?;
            (r, col, rest)
        }
        None => ((BigInt::one(), BigInt::one()), col, t),
    };
    let (m, g) = rest.split_once('@').ok_or_else(|| perr(line_no, col, "expected `<morphism>@<generator>`"))?;
    let (m, g) = (m.trim(), g.trim());
    if g.is_empty() {
        return Err(perr(line_no, col_of(line, rest) + rest.len(), "missing generator name"));
    }
    Ok(RawTerm {
        coeff,
        coeff_col,
        morphism: m.to_string(),
        morphism_col: col_of(line, m),
        generator: g.to_string(),
        generator_col: col_of(line, g),
    })
}

/// Parses the text format; errors carry line and column.
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    match lines.next() {
        Some((_, l)) if l.trim() == FORMAT_HEADER => {}
        Some((n, l)) => return Err(perr(n, col_of(l, l.trim_start()), format!("expected `{FORMAT_HEADER}`"))),
        None => return Err(perr(1, 1, format!("empty file, expected `{FORMAT_HEADER}`"))),
    }
    let mut file = PresentationFile {
        kind: None,
        group: None,
        field: None,
        horizon: None,
        generators: Vec::new(),
        relations: Vec::new(),
    };
    while let Some((n, line)) = lines.next() {
        let body = line.trim_start();
        let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let key_col = col_of(line, body);
        let rest_col = if rest.is_empty() { key_col + key.len() } else { col_of(line, rest.trim_start()) };
        let value = rest.trim();
        match key {
            "category" => {
                file.kind = Some(Kind::parse(value).ok_or_else(|| perr(n, rest_col, format!("unknown category `{value}`")))?)
            }
            "group" => file.group = parse_group(value, &mut lines, n, rest_col)?,
            "field" => file.field = Some(FieldSpec::parse(value).map_err(|e| perr(n, rest_col, e.to_string()))?),
            "horizon" => {
                file.horizon =
                    Some(value.parse().map_err(|_| perr(n, rest_col, format!("bad horizon `{value}`")))?)
            }
            "gen" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [name, "deg", d] = parts[..] else {
                    return Err(perr(n, rest_col, "expected `gen <name> deg <degree>`"));
                };
                let d: usize = d.parse().map_err(|_| perr(n, col_of(line, d), format!("bad degree `{d}`")))?;
                if file.generators.iter().any(|g| g.0 == name) {
                    return Err(perr(n, col_of(line, name), format!("duplicate generator `{name}`")));
                }
                if name.contains(['@', '*', '+', ':']) {
                    return Err(perr(n, col_of(line, name), format!("bad generator name `{name}`")));
                }
                file.generators.push((name.to_string(), d));
            }
            "rel" => {
                let (t, terms) =
                    value.split_once(':').ok_or_else(|| perr(n, rest_col, "expected `rel <degree>: <terms>`"))?;
                let target: usize =
                    t.trim().parse().map_err(|_| perr(n, rest_col, format!("bad degree `{}`", t.trim())))?;
                let terms = terms.split('+').map(|s| parse_term(n, line, s)).collect::<Result<Vec<_>, _>>()?;
                file.relations.push(RawRelation { line: n, target, terms });
            }
            _ => return Err(perr(n, key_col, format!("unknown directive `{key}`"))),
        }
    }
    Ok(file)
}

impl PresentationFile {
    /// The category named in the header.
    pub fn category(&self) -> Result<Category, Error> {
        let kind = self.kind.ok_or_else(|| Error::Config("no category given".into()))?;
        Category::new(kind, self.group.clone())
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// Interprets morphisms and coefficients over the given category and field.
    pub fn presentation<F: Field>(&self, cat: &Category, f: &F) -> Result<Presentation<F::Elem>, Error> {
        let mut p = Presentation::new(self.generators.clone());
        for rel in &self.relations {
            let mut terms = Vec::with_capacity(rel.terms.len());
            for t in &rel.terms {
                let generator = self
                    .generators
                    .iter()
                    .position(|g| g.0 == t.generator)
                    .ok_or_else(|| perr(rel.line, t.generator_col, format!("unknown generator `{}`", t.generator)))?;
                let morphism =
                    cat.parse_morphism(&t.morphism).map_err(|e| perr(rel.line, t.morphism_col, e.to_string()))?;
                let d = self.generators[generator].1;
                if morphism.source() != d || morphism.target() != rel.target {
                    return Err(perr(
                        rel.line,
                        t.morphism_col,
                        format!("expected a morphism {d}->{} for `{}`", rel.target, t.generator),
                    ));
                }
                let coeff = f.from_ratio(&t.coeff.0, &t.coeff.1).map_err(|e| perr(rel.line, t.coeff_col, e.to_string()))?;
                terms.push(Term { coeff, morphism, generator });
            }
            p.add_relation(Relation { target: rel.target, terms })?;
        }
        Ok(p)
    }
}
