//! The categories FI, OI, FI_G and OI_G.
//!
//! Objects are the integers `s ≥ 0`, standing for `[s] = {1, ..., s}`. A
//! morphism `r -> s` is an injection `[r] -> [s]` (strictly increasing for OI
//! kinds) together with, for the decorated kinds, a group label on each source
//! point. Composition follows
//!
//! ```text
//! (f2, g2) ∘ (f1, g1) = (f2 ∘ f1, i ↦ g2(f1(i)) · g1(i))
//! ```
//!
//! The self-embedding `ι` adds one point: for FI kinds the new point is the
//! top of source and target, for OI kinds it is the bottom. The natural map
//! into the shift is witnessed by `m_s : s -> s+1`, the standard inclusion
//! for FI kinds and `i ↦ i+1` for OI kinds.

mod group;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

pub use group::Group;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Fi,
    Oi,
    FiG,
    OiG,
}

impl Kind {
    pub fn has_group(self) -> bool {
        matches!(self, Kind::FiG | Kind::OiG)
    }

    pub fn is_ordered(self) -> bool {
        matches!(self, Kind::Oi | Kind::OiG)
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Fi => "fi",
            Kind::Oi => "oi",
            Kind::FiG => "fi_g",
            Kind::OiG => "oi_g",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fi" => Some(Kind::Fi),
            "oi" => Some(Kind::Oi),
            "fi_g" | "fig" => Some(Kind::FiG),
            "oi_g" | "oig" => Some(Kind::OiG),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A morphism `source -> target`. Images are 1-based; `labels` is empty for
/// undecorated kinds.
///
/// The derived order is the canonical one: lexicographic on images, then labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    source: usize,
    target: usize,
    images: Vec<u16>,
    labels: Vec<u16>,
}

impl Morphism {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    fn label(&self, i: usize) -> Option<usize> {
        self.labels.get(i - 1).map(|&g| g as usize)
    }
}

/// One step of a generator word: a stored degree-raising generator or a stored
/// endomorphism generator, indexed into [`Category::up_generators`] or
/// [`Category::end_generators`] at the current degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up(usize),
    End(usize),
}

/// A materialised hom-set in canonical order.
#[derive(Debug)]
pub struct HomSet {
    morphisms: Vec<Morphism>,
    index: HashMap<Morphism, usize>,
}

impl HomSet {
    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn index_of(&self, m: &Morphism) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Category descriptor: kind, optional group, provenance note, and a memo of
/// hom-sets.
#[derive(Debug)]
pub struct Category {
    kind: Kind,
    group: Option<Group>,
    provenance: String,
    homs: RwLock<HashMap<(usize, usize), Arc<HomSet>>>,
}

impl PartialEq for Category {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.group == other.group
    }
}

impl Eq for Category {}

impl Category {
    pub fn new(kind: Kind, group: Option<Group>) -> Result<Self, Error> {
        if kind.has_group() != group.is_some() {
            return Err(Error::InvalidGroup(format!(
                "{kind} {} a group",
                if kind.has_group() { "requires" } else { "does not take" }
            )));
        }
        if let Some(g) = &group {
            if g.order() > u16::MAX as usize {
                return Err(Error::InvalidGroup("group too large".into()));
            }
        }
        Ok(Category { kind, group, provenance: String::new(), homs: RwLock::new(HashMap::new()) })
    }

    pub fn fi() -> Self {
        Self::new(Kind::Fi, None).unwrap()
    }

    pub fn oi() -> Self {
        Self::new(Kind::Oi, None).unwrap()
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = note.into();
        self
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn group(&self) -> Option<&Group> {
        self.group.as_ref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// `|G|`, or 1 for undecorated kinds.
    pub fn group_order(&self) -> usize {
        self.group.as_ref().map_or(1, Group::order)
    }

    fn e(&self) -> u16 {
        self.group.as_ref().map_or(0, |g| g.identity() as u16)
    }

    fn identity_labels(&self, r: usize) -> Vec<u16> {
        if self.kind.has_group() {
            vec![self.e(); r]
        } else {
            Vec::new()
        }
    }

    /// Builds and validates a morphism from 1-based images and labels.
    pub fn morphism(
        &self,
        source: usize,
        target: usize,
        images: &[usize],
        labels: &[usize],
    ) -> Result<Morphism, Error> {
        let bad = |msg: &str| Err(Error::InvalidMorphism(msg.to_string()));
        if images.len() != source {
            return bad("image count differs from the source");
        }
        if source > target {
            return bad("source exceeds target");
        }
        if images.iter().any(|&i| i == 0 || i > target) {
            return bad("image outside 1..target");
        }
        if self.kind.is_ordered() {
            if images.windows(2).any(|w| w[0] >= w[1]) {
                return bad("images are not strictly increasing");
            }
        } else {
            let mut seen = vec![false; target + 1];
            for &i in images {
                if seen[i] {
                    return bad("images are not injective");
                }
                seen[i] = true;
            }
        }
        let labels: Vec<u16> = if self.kind.has_group() {
            if labels.len() != source {
                return bad("label count differs from the source");
            }
            let n = self.group_order();
            if labels.iter().any(|&g| g >= n) {
                return bad("label outside the group");
            }
            labels.iter().map(|&g| g as u16).collect()
        } else {
            if !labels.is_empty() {
                return bad("labels given for an undecorated kind");
            }
            Vec::new()
        };
        Ok(Morphism { source, target, images: images.iter().map(|&i| i as u16).collect(), labels })
    }

    pub fn identity(&self, s: usize) -> Morphism {
        Morphism {
            source: s,
            target: s,
            images: (1..=s as u16).collect(),
            labels: self.identity_labels(s),
        }
    }

    /// Every morphism `r -> s` in canonical order; empty when `r > s`.
    pub fn hom(&self, r: usize, s: usize) -> Arc<HomSet> {
        if let Some(h) = self.homs.read().unwrap().get(&(r, s)) {
            return h.clone();
        }
        let morphisms = self.enumerate(r, s);
        let index = morphisms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let set = Arc::new(HomSet { morphisms, index });
        self.homs.write().unwrap().entry((r, s)).or_insert(set).clone()
    }

    /// `|C(r, s)|` from the closed forms.
    pub fn hom_count(&self, r: usize, s: usize) -> usize {
        if r > s {
            return 0;
        }
        let maps: usize = if self.kind.is_ordered() {
            binomial(s, r)
        } else {
            ((s - r + 1)..=s).product()
        };
        maps * self.group_order().pow(r as u32)
    }

    fn enumerate(&self, r: usize, s: usize) -> Vec<Morphism> {
        if r > s {
            return Vec::new();
        }
        let mut image_lists = Vec::new();
        let mut cur = Vec::with_capacity(r);
        let mut used = vec![false; s + 1];
        self.images_rec(r, s, &mut cur, &mut used, &mut image_lists);
        let labelings = self.labelings(r);
        let mut out = Vec::with_capacity(image_lists.len() * labelings.len());
        for images in image_lists {
            for labels in &labelings {
                out.push(Morphism { source: r, target: s, images: images.clone(), labels: labels.clone() });
            }
        }
        out
    }

    fn images_rec(&self, r: usize, s: usize, cur: &mut Vec<u16>, used: &mut [bool], out: &mut Vec<Vec<u16>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let start = if self.kind.is_ordered() { cur.last().map_or(1, |&x| x as usize + 1) } else { 1 };
        for i in start..=s {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(i as u16);
            self.images_rec(r, s, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }

    fn labelings(&self, r: usize) -> Vec<Vec<u16>> {
        if !self.kind.has_group() {
            return vec![Vec::new()];
        }
        let n = self.group_order() as u16;
        let mut out = vec![Vec::new()];
        for _ in 0..r {
            out = out
                .into_iter()
                .flat_map(|l| {
                    (0..n).map(move |g| {
                        let mut l = l.clone();
                        l.push(g);
                        l
                    })
                })
                .collect();
        }
        out
    }

    /// `beta ∘ alpha`.
    ///
    /// # Panics
    /// When `beta.source() != alpha.target()`.
    pub fn compose(&self, beta: &Morphism, alpha: &Morphism) -> Morphism {
        assert_eq!(beta.source, alpha.target, "composing {beta:?} after {alpha:?}");
        let images: Vec<u16> = alpha.images.iter().map(|&i| beta.images[i as usize - 1]).collect();
        let labels = match &self.group {
            Some(g) => alpha
                .images
                .iter()
                .zip(&alpha.labels)
                .map(|(&i, &g1)| g.mul(beta.labels[i as usize - 1] as usize, g1 as usize) as u16)
                .collect(),
            None => Vec::new(),
        };
        Morphism { source: alpha.source, target: beta.target, images, labels }
    }

    /// The self-embedding `ι` on morphisms: `r -> s` becomes `r+1 -> s+1`.
    pub fn embed(&self, alpha: &Morphism) -> Morphism {
        let (r, s) = (alpha.source, alpha.target);
        let mut images = Vec::with_capacity(r + 1);
        let mut labels = Vec::new();
        let e = self.e();
        if self.kind.is_ordered() {
            images.push(1);
            images.extend(alpha.images.iter().map(|&i| i + 1));
            if self.kind.has_group() {
                labels.push(e);
                labels.extend_from_slice(&alpha.labels);
            }
        } else {
            images.extend_from_slice(&alpha.images);
            images.push(s as u16 + 1);
            if self.kind.has_group() {
                labels.extend_from_slice(&alpha.labels);
                labels.push(e);
            }
        }
        Morphism { source: r + 1, target: s + 1, images, labels }
    }

    /// The witness `m_s : s -> s+1` of the natural map `V -> SV`.
    pub fn mu_witness(&self, s: usize) -> Morphism {
        let images = if self.kind.is_ordered() {
            (2..=s as u16 + 1).collect()
        } else {
            (1..=s as u16).collect()
        };
        Morphism { source: s, target: s + 1, images, labels: self.identity_labels(s) }
    }

    /// The label-free increasing map `[s-1] -> [s]` that misses `j`.
    fn skip(&self, s: usize, j: usize) -> Morphism {
        let images = (1..=s as u16).filter(|&i| i as usize != j).collect();
        Morphism { source: s - 1, target: s, images, labels: self.identity_labels(s - 1) }
    }

    /// Splits `alpha : r -> s` (with `s > r`) as `gamma ∘ beta` where
    /// `gamma : s-1 -> s` is label-free and misses the largest point outside
    /// the image of `alpha`, and `beta` carries all labels.
    pub fn factor_through_predecessor(&self, alpha: &Morphism) -> (Morphism, Morphism) {
        let (r, s) = (alpha.source, alpha.target);
        assert!(s > r, "factoring needs target > source");
        let mut hit = vec![false; s + 1];
        for &i in &alpha.images {
            hit[i as usize] = true;
        }
        let j = (1..=s).rev().find(|&i| !hit[i]).expect("a missed point exists");
        let gamma = self.skip(s, j);
        let images = alpha.images.iter().map(|&i| if i as usize > j { i - 1 } else { i }).collect();
        let beta = Morphism { source: r, target: s - 1, images, labels: alpha.labels.clone() };
        (beta, gamma)
    }

    /// Stored degree-raising generators `r -> r+1`. Together with the
    /// endomorphism generators they generate every morphism.
    pub fn up_generators(&self, r: usize) -> Vec<Morphism> {
        if self.kind.is_ordered() {
            self.skip_maps(r)
        } else {
            vec![self.mu_witness(r)]
        }
    }

    /// The label-free increasing maps `r -> r+1`, in canonical order. Every
    /// morphism `r -> r+1` is an automorphism of `r+1` after one of these,
    /// after an automorphism of `r`.
    pub fn skip_maps(&self, r: usize) -> Vec<Morphism> {
        let mut v: Vec<Morphism> = (1..=r + 1).map(|j| self.skip(r + 1, j)).collect();
        v.sort();
        v
    }

    /// Generators of the monoid `C(s, s)` under composition.
    pub fn end_generators(&self, s: usize) -> Vec<Morphism> {
        let mut gens = Vec::new();
        if !self.kind.is_ordered() {
            for k in 1..s {
                gens.push(self.transposition(s, k));
            }
        }
        if let Some(g) = &self.group {
            let slots = if self.kind.is_ordered() { s } else { s.min(1) };
            for slot in 1..=slots {
                for h in g.generators() {
                    gens.push(self.slot_label(s, slot, h));
                }
            }
        }
        gens
    }

    fn transposition(&self, s: usize, k: usize) -> Morphism {
        let mut images: Vec<u16> = (1..=s as u16).collect();
        images.swap(k - 1, k);
        Morphism { source: s, target: s, images, labels: self.identity_labels(s) }
    }

    fn slot_label(&self, s: usize, slot: usize, h: usize) -> Morphism {
        let mut labels = self.identity_labels(s);
        labels[slot - 1] = h as u16;
        Morphism { source: s, target: s, images: (1..=s as u16).collect(), labels }
    }

    fn end_index(&self, s: usize, m: &Morphism) -> usize {
        self.end_generators(s).iter().position(|g| g == m).expect("endomorphism generator")
    }

    /// A word in the stored generators whose composite is `alpha`. Steps are
    /// listed in application order, starting at degree `alpha.source()`.
    pub fn generator_word(&self, alpha: &Morphism) -> Vec<Step> {
        let (r, s) = (alpha.source, alpha.target);
        let mut steps = Vec::new();
        if self.kind.is_ordered() {
            let mut chain = Vec::new();
            let mut cur = Morphism { labels: self.identity_labels(r), ..alpha.clone() };
            while cur.target > cur.source {
                let (beta, gamma) = self.factor_through_predecessor(&cur);
                let ups = self.up_generators(gamma.source);
                chain.push(Step::Up(ups.iter().position(|u| *u == gamma).expect("up generator")));
                cur = beta;
            }
            chain.reverse();
            steps.extend(chain);
            if let Some(g) = &self.group {
                for i in 1..=r {
                    let slot = alpha.image(i);
                    for &h in g.word(alpha.label(i).unwrap()).iter().rev() {
                        steps.push(Step::End(self.end_index(s, &self.slot_label(s, slot, h))));
                    }
                }
            }
        } else {
            steps.extend(std::iter::repeat_n(Step::Up(0), s - r));
            // sigma extends the images by the missed points in increasing order
            let mut sigma: Vec<usize> = alpha.images.iter().map(|&i| i as usize).collect();
            let mut hit = vec![false; s + 1];
            for &i in &sigma {
                hit[i] = true;
            }
            sigma.extend((1..=s).filter(|&i| !hit[i]));
            if let Some(g) = &self.group {
                for i in 1..=r {
                    let label = alpha.label(i).unwrap();
                    if label == g.identity() {
                        continue;
                    }
                    // (id, a at slot i) = (1 i) ∘ (id, a at slot 1) ∘ (1 i)
                    let swap = self.swap_word(s, i);
                    steps.extend(swap.iter().copied());
                    for &h in g.word(label).iter().rev() {
                        steps.push(Step::End(self.end_index(s, &self.slot_label(s, 1, h))));
                    }
                    steps.extend(swap);
                }
            }
            steps.extend(permutation_word(&sigma).into_iter().map(|k| Step::End(k - 1)));
        }
        steps
    }

    fn swap_word(&self, s: usize, i: usize) -> Vec<Step> {
        if i == 1 {
            return vec![];
        }
        let mut sigma: Vec<usize> = (1..=s).collect();
        sigma.swap(0, i - 1);
        permutation_word(&sigma).into_iter().map(|k| Step::End(k - 1)).collect()
    }

    /// Composite of a generator word starting at degree `r`.
    pub fn evaluate_word(&self, r: usize, word: &[Step]) -> Morphism {
        let mut cur = self.identity(r);
        for step in word {
            let t = cur.target;
            let g = match *step {
                Step::Up(k) => self.up_generators(t)[k].clone(),
                Step::End(k) => self.end_generators(t)[k].clone(),
            };
            cur = self.compose(&g, &cur);
        }
        cur
    }

    /// Canonical text form `r->s:[i1,...,ir](g1,...,gr)`; labels are omitted
    /// for undecorated kinds.
    pub fn format_morphism(&self, m: &Morphism) -> String {
        let join = |v: &[u16]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.kind.has_group() {
            format!("{}->{}:[{}]({})", m.source, m.target, join(&m.images), join(&m.labels))
        } else {
            format!("{}->{}:[{}]", m.source, m.target, join(&m.images))
        }
    }

    pub fn parse_morphism(&self, text: &str) -> Result<Morphism, Error> {
        let bad = |msg: &str| Error::InvalidMorphism(format!("{msg} in `{text}`"));
        let (ends, rest) = text.trim().split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let (r, s) = ends.split_once("->").ok_or_else(|| bad("missing `->`"))?;
        let r: usize = r.trim().parse().map_err(|_| bad("bad source"))?;
        let s: usize = s.trim().parse().map_err(|_| bad("bad target"))?;
        let rest = rest.trim();
        let rest = rest.strip_prefix('[').ok_or_else(|| bad("missing `[`"))?;
        let (imgs, rest) = rest.split_once(']').ok_or_else(|| bad("missing `]`"))?;
        let list = |body: &str| -> Result<Vec<usize>, Error> {
            if body.trim().is_empty() {
                return Ok(vec![]);
            }
            body.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad("bad integer"))).collect()
        };
        let images = list(imgs)?;
        let rest = rest.trim();
        let labels = if rest.is_empty() {
            if self.kind.has_group() {
                return Err(bad("missing labels"));
            }
            vec![]
        } else {
            let body = rest
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| bad("labels must be `(...)`"))?;
            list(body)?
        };
        self.morphism(r, s, &images, &labels)
    }

    /// `fi`, `oi`, `fi_g z/2`, ...
    pub fn spec(&self) -> String {
        match &self.group {
            Some(g) => format!("{} {}", self.kind, g.spec()),
            None => self.kind.to_string(),
        }
    }
}

/// Adjacent transpositions `k` (swapping `k` and `k+1`) whose composite, in
/// application order, is the permutation `sigma` (1-based images).
pub fn permutation_word(sigma: &[usize]) -> Vec<usize> {
    let mut cur = sigma.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) {
        word.push(i + 1);
        cur.swap(i, i + 1);
    }
    word
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests;
