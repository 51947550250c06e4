//! Seeded random presentations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Category;
use crate::exactfield::Field;
use crate::module::{Presentation, Relation, Term, TruncatedModule};

pub const MAX_GENERATORS: usize = 3;
pub const MAX_GENERATOR_DEGREE: usize = 3;
pub const MAX_RELATIONS: usize = 4;
pub const MAX_RELATION_DEGREE: usize = 4;
pub const MAX_TERMS: usize = 3;

#[derive(Clone, Debug)]
pub struct CorpusEntry<F: Field> {
    pub seed: u64,
    pub presentation: Presentation<F::Elem>,
    pub module: Arc<TruncatedModule<F>>,
}

fn coefficient<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    match f.order() {
        Some(p) => f.element(rng.gen_range(1..p)),
        None => {
            let v = rng.gen_range(1..=9i64);
            f.from_i64(if rng.gen() { v } else { -v })
        }
    }
}

/// A presentation drawn from `seed` alone.
pub fn random_presentation<F: Field>(cat: &Category, f: &F, seed: u64) -> Presentation<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=MAX_GENERATORS);
    let degrees: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=MAX_GENERATOR_DEGREE)).collect();
    let mut p = Presentation::with_degrees(&degrees);
    let low = *degrees.iter().min().expect("at least one generator");
    for _ in 0..rng.gen_range(0..=MAX_RELATIONS) {
        let target = rng.gen_range(low..=MAX_RELATION_DEGREE);
        let eligible: Vec<usize> = (0..n).filter(|&j| degrees[j] <= target).collect();
        let terms = (0..rng.gen_range(1..=MAX_TERMS))
            .map(|_| {
                let generator = eligible[rng.gen_range(0..eligible.len())];
                let hom = cat.hom(degrees[generator], target);
                let morphism = hom.morphisms()[rng.gen_range(0..hom.len())].clone();
                Term { coeff: coefficient(f, &mut rng), morphism, generator }
            })
            .collect();
        p.add_relation(Relation { target, terms }).expect("well-formed relation");
    }
    p
}

/// `count` entries with seeds `base, base + 1, ...`.
pub fn corpus<F: Field>(cat: &Arc<Category>, f: &F, base: u64, count: usize, horizon: usize) -> Vec<CorpusEntry<F>> {
    (0..count as u64)
        .map(|k| {
            let seed = base.wrapping_add(k);
            let presentation = random_presentation(cat, f, seed);
            let module = presentation.module(cat.clone(), f, horizon).0;
            CorpusEntry { seed, presentation, module }
        })
        .collect()
}
