use std::sync::Arc;

use super::*;
use crate::category::Category;
use crate::exactfield::{Field, Fp, Rationals, Span};
use crate::module::TruncatedModule;
use crate::testutil::module_from_text;

fn q() -> Rationals {
    Rationals::default()
}

fn free(cat: Category, s: usize, h: usize) -> Arc<TruncatedModule<Rationals>> {
    Arc::new(TruncatedModule::free(Arc::new(cat), q(), s, h))
}

fn oi_torsion(h: usize) -> Arc<TruncatedModule<Rationals>> {
    module_from_text(&q(), "category oi\ngen x deg 1\nrel 2: 1*1->2:[2]@x\n", h)
}

fn fi_torsion(h: usize) -> Arc<TruncatedModule<Rationals>> {
    module_from_text(&q(), "category fi\ngen x deg 0\nrel 1: 1*0->1:[]@x\n", h)
}

fn samples() -> Vec<Arc<TruncatedModule<Rationals>>> {
    vec![
        oi_torsion(5),
        fi_torsion(5),
        free(Category::fi(), 2, 5),
        module_from_text(&q(), "category oi\ngen x deg 0\ngen y deg 1\nrel 2: 1*0->2:[]@x + -1*1->2:[2]@y\nrel 3: 1*1->3:[3]@y\n", 5),
        module_from_text(&q(), "category fi\ngen x deg 1\nrel 2: 1*1->2:[1]@x + 1*1->2:[2]@x\n", 5),
    ]
}

/// `(mV)_t` from every morphism of positive degree.
fn m_span_brute<F: Field>(v: &TruncatedModule<F>, t: usize) -> Span<F::Elem> {
    let f = v.field();
    let mut s = Span::new(v.dim(t));
    for r in 0..t {
        for a in v.category().hom(r, t).morphisms() {
            for j in 0..v.dim(r) {
                let mut e = vec![f.zero(); v.dim(r)];
                e[j] = f.one();
                s.insert(f, v.act_vec(a, &e).unwrap());
            }
        }
    }
    s
}

#[test]
fn m_span_matches_brute_force() {
    for v in samples() {
        for t in 0..=v.horizon() as usize {
            assert_eq!(m_span(&v, t), m_span_brute(&v, t));
        }
    }
}

#[test]
fn zeroth_homology_examples() {
    for (cat, top) in [(Category::oi(), [1, 1, 1, 1]), (Category::fi(), [1, 1, 2, 6])] {
        let cat = Arc::new(cat);
        for s in 0..=3 {
            let v = TruncatedModule::free(cat.clone(), q(), s, 5);
            let h0 = zeroth_homology(&v);
            let mut want = vec![0; 6];
            want[s] = top[s];
            assert_eq!(h0.dims(), want);
            assert_eq!(h0.gd(), s as isize);
        }
    }
    let h0 = zeroth_homology(&oi_torsion(5));
    assert_eq!(h0.dims(), vec![0, 1, 0, 0, 0, 0]);
    assert_eq!(gd(&oi_torsion(5)), 1);
    let z = TruncatedModule::zero(Arc::new(Category::oi()), q(), 4);
    assert_eq!(zeroth_homology(&z).dims(), vec![0; 5]);
    assert_eq!(gd(&z), -1);
}

#[test]
fn projectives_resolve_themselves() {
    for mk in [Category::oi as fn() -> Category, Category::fi] {
        let cat = mk();
        for s in 0..=3 {
            let v = free(mk(), s, 5);
            let res = resolve(&v, 2, Style::Minimal);
            assert_eq!(res.steps[0].generator_degrees(), &[s][..cat.hom_count(s, s).min(1)]);
            assert!(res.steps[0].syzygy.iter().all(|z| z.dim() == 0));
            assert_eq!(res.length(), Some(1));
            let rep = tor_from_resolution(&res);
            assert_eq!(rep.hd, vec![s as isize, -1, -1]);
            assert_eq!(rep.reg, s as isize);
            assert!(rep.reg_exact);
        }
    }
}

#[test]
fn oi_torsion_resolution() {
    let v = oi_torsion(6);
    let res = resolve(&v, 2, Style::Minimal);
    assert_eq!(res.steps[0].generator_degrees(), &[1]);
    assert_eq!(res.syzygy_gd(1), 2);
    assert_eq!(res.steps[1].generator_degrees(), &[2]);
    assert_eq!(res.steps[1].gd(), res.syzygy_gd(1));
    let rep = tor_from_resolution(&res);
    assert_eq!(rep.hd[0], 1);
    assert_eq!(rep.hd[1], 2);
    assert_eq!(rep.gd, gd(&v));
    let terms = res.differential_terms(1, 0).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(v.category().format_morphism(&terms[0].1), "1->2:[2]");
}

#[test]
fn resolutions_are_exact_complexes() {
    for v in samples() {
        for style in [Style::Minimal, Style::Padded] {
            let res = resolve(&v, 2, style);
            assert!(res.exactness_defects.is_empty(), "{:?}", res.exactness_defects);
            let f = v.field();
            for i in 1..res.steps.len().min(3) {
                for t in 0..=v.horizon() as usize {
                    let d = res.differential(i - 1, t).mul(f, &res.differential(i, t));
                    assert!(d.is_zero(f), "i={i} t={t}");
                }
            }
            if style == Style::Minimal {
                for i in 0..res.steps.len().min(3) {
                    assert_eq!(res.steps[i].gd(), res.syzygy_gd(i), "adaptable at {i}");
                }
            }
        }
    }
}

#[test]
fn tor_is_resolution_independent() {
    for v in samples() {
        let a = tor_from_resolution(&resolve(&v, 2, Style::Minimal));
        let b = tor_from_resolution(&resolve(&v, 2, Style::Padded));
        assert_eq!(a.h, b.h);
    }
}

#[test]
fn padded_resolutions_are_not_minimal() {
    let v = oi_torsion(5);
    let res = resolve(&v, 2, Style::Padded);
    let f = v.field();
    assert_eq!(res.steps[0].generator_degrees(), &[1, 1]);
    assert!(res.steps[1].reduced.iter().any(|m| crate::exactfield::rank(f, m) > 0));
    assert!(resolve(&v, 2, Style::Minimal).steps.iter().all(|s| s.reduced.iter().all(|m| m.is_zero(f))));
}

#[test]
fn hd0_is_gd() {
    for v in samples() {
        assert_eq!(tor_groups(&v, 1).hd[0], gd(&v));
    }
}

#[test]
fn tor_over_small_prime() {
    let f = Fp::new(2).unwrap();
    let v = Arc::new(TruncatedModule::free(Arc::new(Category::fi()), f, 2, 5));
    let rep = tor_groups(&v, 2);
    assert_eq!(rep.h[0], vec![0, 0, 2, 0, 0, 0]);
    assert_eq!(rep.hd[1], -1);
}

#[test]
fn hilbert_examples() {
    let fit = hilbert_fit(&free(Category::oi(), 1, 6)).unwrap();
    assert_eq!(fit.to_string(), "n");
    assert_eq!(fit.coefficient_strings(), ["0", "1"]);
    assert_eq!(fit.onset, 0);
    assert_eq!(fit.degree(), 1);

    let fit = hilbert_fit(&free(Category::fi(), 2, 6)).unwrap();
    assert_eq!(fit.to_string(), "n^2 - n");
    assert_eq!((fit.degree(), fit.onset), (2, 0));

    let fit = hilbert_fit(&oi_torsion(6)).unwrap();
    assert_eq!(fit.to_string(), "1");
    assert_eq!((fit.degree(), fit.onset), (0, 1));
    assert!(fit.degree_within_gd() && fit.matches());

    let fit = hilbert_fit(&fi_torsion(4)).unwrap();
    assert_eq!((fit.to_string().as_str(), fit.onset, fit.degree()), ("0", 1, -1));

    assert!(matches!(fit_dims(&[0, 1, 5], 1), Err(crate::Error::Inconclusive(_))));
    assert!(matches!(fit_dims(&[0, 1], 1), Err(crate::Error::Inconclusive(_))));
    let fit = fit_dims(&[1, 1, 3, 6, 10, 15], 2).unwrap();
    assert_eq!((fit.to_string().as_str(), fit.onset), ("1/2*n^2 + 1/2*n", 1));
}

mod props {
    use proptest::prelude::*;

    use super::super::fit_dims;

    proptest! {
        #[test]
        fn fits_reproduce_dims(dims in proptest::collection::vec(0usize..40, 1..9), gd in -1isize..4) {
            if let Ok(fit) = fit_dims(&dims, gd) {
                prop_assert!(fit.matches());
                prop_assert!(fit.degree_within_gd());
            }
        }

        #[test]
        fn polynomials_are_recovered(c in proptest::collection::vec(-5i64..6, 1..4), pre in proptest::collection::vec(0usize..9, 0..3)) {
            let n0 = pre.len();
            let mut dims = pre.clone();
            for n in n0..n0 + 6 {
                let v: i64 = c.iter().rev().fold(0, |acc, x| acc * n as i64 + x);
                dims.push(v.rem_euclid(1000) as usize);
            }
            let deg = c.len() as isize - 1;
            let poly_ok = (n0..dims.len()).all(|n| dims[n] as i64 == c.iter().rev().fold(0, |acc, x| acc * n as i64 + x));
            if poly_ok {
                let fit = fit_dims(&dims, deg).unwrap();
                prop_assert!(fit.onset <= n0);
                prop_assert!(fit.matches());
            }
        }
    }
}

#[test]
fn shift_projective_regularity_oi() {
    let cat = Arc::new(Category::oi());
    let hyp = shift_projective_hypothesis(&cat, &q(), 3, 0, 2, 5);
    assert_eq!(hyp.regs, vec![0, 1, 2, 3]);
    assert!(hyp.holds());
}

#[test]
fn verify_examples() {
    let cat = Arc::new(Category::oi());
    let hyp = shift_projective_hypothesis(&cat, &q(), 2, 0, 2, 5);
    let rep = verify_theorems(&oi_torsion(6), 2, 0, &hyp);
    assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    let skipped: Vec<_> = rep.checks.iter().filter(|c| c.status == Status::Skipped).collect();
    assert!(skipped.iter().any(|c| c.name.starts_with("hd_0(V) <= reg(DV)") && c.detail.contains("not injective")));

    let v = module_from_text(&q(), "category oi\ngen x deg 1\nrel 3: 1*1->3:[1]@x\nrel 3: 1*1->3:[2]@x\nrel 3: 1*1->3:[3]@x\n", 6);
    assert_eq!(v.dims(), &[0, 1, 2, 0, 0, 0, 0]);
    let rep = verify_theorems(&v, 2, 0, &hyp);
    let c = rep.checks.iter().find(|c| c.name.starts_with("reg(V) <= N")).unwrap();
    assert_eq!(c.status, Status::Pass, "{}", c.detail);
    assert!(rep.passed());

    let rep = verify_theorems(&free(Category::oi(), 2, 6), 2, 0, &hyp);
    assert!(rep.passed());
    assert!(rep.checks.iter().all(|c| c.status != Status::Skipped || c.name.starts_with("reg(V) <= N")));

    let bad = Hypothesis { offset: 0, depth: 1, horizon: 3, regs: vec![0, 2] };
    let rep = verify_theorems(&oi_torsion(4), 1, 0, &bad);
    assert!(!rep.passed());
    assert!(rep.checks[1..].iter().all(|c| c.status == Status::Skipped));
}
