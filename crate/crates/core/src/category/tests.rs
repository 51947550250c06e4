use std::collections::HashSet;

use super::*;

fn all_kinds() -> Vec<Category> {
    vec![
        Category::fi(),
        Category::oi(),
        Category::new(Kind::FiG, Some(Group::cyclic(2).unwrap())).unwrap(),
        Category::new(Kind::OiG, Some(Group::cyclic(2).unwrap())).unwrap(),
        Category::new(Kind::OiG, Some(Group::cyclic(3).unwrap())).unwrap(),
    ]
}

fn bound(c: &Category, unlabelled: usize) -> usize {
    if c.kind().has_group() {
        unlabelled - 1
    } else {
        unlabelled
    }
}

#[test]
fn hom_examples() {
    assert_eq!(Category::fi().hom(1, 2).len(), 2);
    assert_eq!(Category::oi().hom(2, 4).len(), 6);
    for c in all_kinds() {
        assert!(c.hom(3, 1).is_empty());
    }
    let oig = Category::new(Kind::OiG, Some(Group::cyclic(2).unwrap())).unwrap();
    assert_eq!(oig.hom(1, 2).len(), 4);
}

#[test]
fn hom_counts_match_closed_forms() {
    for c in all_kinds() {
        let n = bound(&c, 6);
        for s in 0..=n {
            for r in 0..=s {
                let h = c.hom(r, s);
                assert_eq!(h.len(), c.hom_count(r, s), "{} hom({r},{s})", c.spec());
                let distinct: HashSet<_> = h.morphisms().iter().collect();
                assert_eq!(distinct.len(), h.len());
                assert!(h.morphisms().windows(2).all(|w| w[0] < w[1]), "canonical order");
                for (i, m) in h.morphisms().iter().enumerate() {
                    assert_eq!(h.index_of(m), Some(i));
                }
            }
        }
    }
}

#[test]
fn composition_examples() {
    let oi = Category::oi();
    let alpha = oi.morphism(1, 2, &[2], &[]).unwrap();
    assert_eq!(oi.compose(&oi.identity(2), &alpha), alpha);
    assert_eq!(oi.compose(&alpha, &oi.identity(1)), alpha);
    let beta = oi.morphism(2, 3, &[1, 3], &[]).unwrap();
    assert_eq!(oi.compose(&beta, &alpha).images(), &[3]);

    let oig = Category::new(Kind::OiG, Some(Group::cyclic(2).unwrap())).unwrap();
    let a = oig.morphism(1, 1, &[1], &[1]).unwrap();
    let b = oig.morphism(1, 2, &[2], &[1]).unwrap();
    let c = oig.compose(&b, &a);
    assert_eq!(c.images(), &[2]);
    assert_eq!(c.labels(), &[0]);
}

#[test]
#[should_panic]
fn compose_mismatch_panics() {
    let oi = Category::oi();
    let a = oi.morphism(1, 2, &[2], &[]).unwrap();
    oi.compose(&a, &a);
}

fn composable_triples(c: &Category, n: usize) -> Vec<(Morphism, Morphism, Morphism)> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in r..=n {
            for t in s..=n {
                for u in t..=n {
                    let (a, b, cc) = (c.hom(r, s), c.hom(s, t), c.hom(t, u));
                    // a thinned sample keeps FI manageable
                    for (i, x) in a.morphisms().iter().enumerate().step_by(3) {
                        for y in b.morphisms().iter().skip(i % 2).step_by(5) {
                            for z in cc.morphisms().iter().step_by(7) {
                                out.push((x.clone(), y.clone(), z.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn composition_is_associative() {
    for c in all_kinds() {
        let n = bound(&c, 4);
        for (a, b, d) in composable_triples(&c, n) {
            let left = c.compose(&d, &c.compose(&b, &a));
            let right = c.compose(&c.compose(&d, &b), &a);
            assert_eq!(left, right);
        }
    }
}

#[test]
fn embedding_examples() {
    let oi = Category::oi();
    let a = oi.morphism(1, 2, &[2], &[]).unwrap();
    assert_eq!(oi.embed(&a).images(), &[1, 3]);
    let fi = Category::fi();
    let a = fi.morphism(1, 2, &[2], &[]).unwrap();
    assert_eq!(fi.embed(&a).images(), &[2, 3]);
    for c in all_kinds() {
        assert_eq!(c.embed(&c.identity(2)), c.identity(3));
    }
}

#[test]
fn embedding_is_a_faithful_functor() {
    for c in all_kinds() {
        let n = bound(&c, 5);
        for r in 0..=n {
            for s in r..=n {
                let h = c.hom(r, s);
                let images: HashSet<_> = h.morphisms().iter().map(|m| c.embed(m)).collect();
                assert_eq!(images.len(), h.len(), "faithful on hom({r},{s})");
            }
        }
        for (a, b, _) in composable_triples(&c, bound(&c, 4)) {
            assert_eq!(c.embed(&c.compose(&b, &a)), c.compose(&c.embed(&b), &c.embed(&a)));
        }
    }
}

#[test]
fn mu_witness_examples() {
    assert_eq!(Category::oi().mu_witness(1).images(), &[2]);
    assert_eq!(Category::fi().mu_witness(1).images(), &[1]);
    let fig = Category::new(Kind::FiG, Some(Group::cyclic(2).unwrap())).unwrap();
    assert_eq!(fig.mu_witness(3).labels(), &[0, 0, 0]);
}

fn natural(c: &Category, alpha: &Morphism, m_r: &Morphism, m_s: &Morphism) -> bool {
    c.compose(&c.embed(alpha), m_r) == c.compose(m_s, alpha)
}

#[test]
fn mu_witness_is_natural() {
    for c in all_kinds() {
        let n = bound(&c, 5);
        for r in 0..=n {
            for s in r..=n {
                let (mr, ms) = (c.mu_witness(r), c.mu_witness(s));
                for a in c.hom(r, s).morphisms() {
                    assert!(natural(&c, a, &mr, &ms), "{} {:?}", c.spec(), a);
                }
            }
        }
    }
}

#[test]
fn mu_witness_is_the_unique_natural_family() {
    // For each s, any other candidate m: s -> s+1 breaks naturality against some
    // alpha: r -> s (with the true witness at r) or alpha: s -> t (true witness at t).
    for c in all_kinds() {
        let n = bound(&c, 4);
        for s in 0..n {
            for cand in c.hom(s, s + 1).morphisms() {
                let ok = (0..s).all(|r| {
                    c.hom(r, s).morphisms().iter().all(|a| natural(&c, a, &c.mu_witness(r), cand))
                }) && c.hom(s, s).morphisms().iter().all(|a| natural(&c, a, cand, cand))
                    && (s + 1..=n).all(|t| {
                        c.hom(s, t).morphisms().iter().all(|a| natural(&c, a, cand, &c.mu_witness(t)))
                    });
                assert_eq!(ok, *cand == c.mu_witness(s), "{} s={s} {:?}", c.spec(), cand);
            }
        }
    }
}

#[test]
fn factorization_recomposes() {
    for c in all_kinds() {
        let n = bound(&c, 5);
        for s in 0..=n {
            for r in 0..s {
                for a in c.hom(r, s).morphisms() {
                    let (beta, gamma) = c.factor_through_predecessor(a);
                    assert_eq!(c.compose(&gamma, &beta), *a);
                    assert!(gamma.labels().iter().all(|&g| g == 0));
                }
            }
        }
    }
    let oi = Category::oi();
    let a = oi.morphism(1, 3, &[3], &[]).unwrap();
    let (beta, gamma) = oi.factor_through_predecessor(&a);
    assert_eq!(oi.compose(&gamma, &beta), a);
    let fi = Category::fi();
    let a = fi.morphism(0, 2, &[], &[]).unwrap();
    let (beta, _) = fi.factor_through_predecessor(&a);
    assert_eq!((beta.source(), beta.target()), (0, 1));
}

fn closure(c: &Category, s: usize) -> HashSet<Morphism> {
    let gens = c.end_generators(s);
    let mut seen: HashSet<Morphism> = HashSet::from([c.identity(s)]);
    let mut frontier = vec![c.identity(s)];
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let x = c.compose(g, &m);
            if seen.insert(x.clone()) {
                frontier.push(x);
            }
        }
    }
    seen
}

#[test]
fn end_generators_generate() {
    assert!(Category::oi().end_generators(4).is_empty());
    assert_eq!(Category::fi().end_generators(3).len(), 2);
    let fig = Category::new(Kind::FiG, Some(Group::cyclic(2).unwrap())).unwrap();
    assert_eq!(fig.end_generators(2).len(), 2);
    assert_eq!(closure(&fig, 2).len(), 8);
    for c in all_kinds() {
        for s in 0..=bound(&c, 5) {
            assert_eq!(closure(&c, s).len(), c.hom_count(s, s), "{} s={s}", c.spec());
        }
    }
}

#[test]
fn generator_words_evaluate_back() {
    let s3 = {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mul = perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
        Group::from_table(mul).unwrap()
    };
    let mut kinds = all_kinds();
    kinds.push(Category::new(Kind::FiG, Some(s3.clone())).unwrap());
    kinds.push(Category::new(Kind::OiG, Some(s3)).unwrap());
    for c in kinds {
        let n = if c.group_order() > 2 { 3 } else { bound(&c, 5) };
        for s in 0..=n {
            for r in 0..=s {
                for a in c.hom(r, s).morphisms() {
                    let w = c.generator_word(a);
                    assert_eq!(c.evaluate_word(r, &w), *a, "{} {}", c.spec(), c.format_morphism(a));
                }
            }
        }
    }
}

#[test]
fn permutation_words() {
    for sigma in [vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1, 4], vec![4, 3, 2, 1]] {
        let c = Category::fi();
        let s = sigma.len();
        let m = c.morphism(s, s, &sigma, &[]).unwrap();
        let w: Vec<Step> = permutation_word(&sigma).into_iter().map(|k| Step::End(k - 1)).collect();
        assert_eq!(c.evaluate_word(s, &w), m);
    }
}

#[test]
fn text_encoding() {
    let oig = Category::new(Kind::OiG, Some(Group::cyclic(2).unwrap())).unwrap();
    let m = oig.morphism(2, 4, &[1, 3], &[1, 0]).unwrap();
    let t = oig.format_morphism(&m);
    assert_eq!(t, "2->4:[1,3](1,0)");
    assert_eq!(oig.parse_morphism(&t).unwrap(), m);
    assert_eq!(oig.format_morphism(&oig.identity(0)), "0->0:[]()");
    let fi = Category::fi();
    assert_eq!(fi.format_morphism(&fi.morphism(1, 2, &[2], &[]).unwrap()), "1->2:[2]");
    assert!(fi.parse_morphism("1->2:[2](0)").is_err());
    assert!(fi.parse_morphism("2->2:[1,1]").is_err());
    assert!(Category::oi().parse_morphism("2->3:[3,1]").is_err());
    assert!(oig.parse_morphism("1->2:[2]").is_err());
    for c in all_kinds() {
        for a in c.hom(2, 4).morphisms() {
            assert_eq!(c.parse_morphism(&c.format_morphism(a)).unwrap(), *a);
        }
    }
}

#[test]
fn descriptor_requires_matching_group() {
    assert!(Category::new(Kind::Fi, Some(Group::cyclic(2).unwrap())).is_err());
    assert!(Category::new(Kind::OiG, None).is_err());
}
