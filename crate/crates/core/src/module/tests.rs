use std::sync::Arc;

use num::rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::category::{Group, Kind};
use crate::exactfield::{FieldSpec, Fp, Rationals};

fn oi() -> Arc<Category> {
    Arc::new(Category::oi())
}

fn fi() -> Arc<Category> {
    Arc::new(Category::fi())
}

fn q() -> Rationals {
    Rationals::default()
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// OI `M(1)/IM(1)`: one generator in degree 1 killed by the map with image (2).
fn oi_torsion(h: usize) -> Arc<TruncatedModule<Rationals>> {
    let cat = oi();
    let mut p = Presentation::with_degrees(&[1]);
    let m = cat.morphism(1, 2, &[2], &[]).unwrap();
    p.add_relation(Relation { target: 2, terms: vec![Term { coeff: ratio(1), morphism: m, generator: 0 }] })
        .unwrap();
    p.module(cat, &q(), h).0
}

/// FI `M(0)` with the degree-one image of its generator killed.
fn fi_torsion(h: usize) -> Arc<TruncatedModule<Rationals>> {
    let cat = fi();
    let mut p = Presentation::with_degrees(&[0]);
    let m = cat.morphism(0, 1, &[], &[]).unwrap();
    p.add_relation(Relation { target: 1, terms: vec![Term { coeff: ratio(1), morphism: m, generator: 0 }] })
        .unwrap();
    p.module(cat, &q(), h).0
}

/// A module over OI_G(Z/2) with mixed relations, to exercise dense actions.
fn oig_mixed(h: usize) -> Arc<TruncatedModule<Fp>> {
    let text = "catrep-presentation 1\ncategory oi_g\ngroup z/2\nfield fp:5\nhorizon 4\n\
                gen a deg 1\ngen b deg 1\n\
                rel 2: 1*1->2:[1](0)@a + 2*1->2:[2](1)@b\n\
                rel 1: 1*1->1:[1](1)@a + -1*1->1:[1](0)@b\n";
    let file = parse_presentation_file(text).unwrap();
    let cat = Arc::new(file.category().unwrap());
    let f = Fp::new(5).unwrap();
    let p = file.presentation(&cat, &f).unwrap();
    p.module(cat, &f, h).0
}

#[test]
fn free_module_dims() {
    assert_eq!(TruncatedModule::free(oi(), q(), 1, 4).dims(), &[0, 1, 2, 3, 4]);
    assert_eq!(TruncatedModule::free(fi(), q(), 2, 4).dims(), &[0, 0, 2, 6, 12]);
    let oig = Arc::new(Category::new(Kind::OiG, Some(Group::cyclic(2).unwrap())).unwrap());
    for c in [oi(), fi(), oig] {
        assert!(TruncatedModule::free(c, q(), 0, 5).dims().iter().all(|&d| d == 1));
    }
}

#[test]
fn identities_act_as_identity() {
    let v = oig_mixed(3);
    for s in 0..=3 {
        let id = v.category().identity(s);
        assert_eq!(v.act(&id).unwrap(), Mat::identity(v.field(), v.dim(s)));
    }
    let m = TruncatedModule::free(fi(), q(), 1, 3);
    assert!(m.act(&m.category().identity(4)).is_err());
}

#[test]
fn free_action_is_a_basis_map() {
    let m = TruncatedModule::free(fi(), q(), 1, 4);
    let cat = m.category().clone();
    for a in cat.hom(2, 4).morphisms() {
        let mat = m.act(a).unwrap();
        for j in 0..mat.cols() {
            let col = mat.column(j);
            assert_eq!(col.iter().filter(|x| **x == ratio(1)).count(), 1);
            assert_eq!(col.iter().filter(|x| **x != ratio(0)).count(), 1);
            let b = cat.hom(1, 2).morphisms()[j].clone();
            let i = col.iter().position(|x| *x == ratio(1)).unwrap();
            assert_eq!(cat.hom(1, 4).morphisms()[i], cat.compose(a, &b));
        }
    }
}

#[test]
fn factorizations_agree() {
    // every factorization of the OI map [1] -> [4] with image (3)
    let v = oi_torsion(4);
    let w = TruncatedModule::free(oi(), q(), 1, 4);
    let cat = v.category().clone();
    let alpha = cat.morphism(1, 4, &[3], &[]).unwrap();
    for m in [&*v, &w] {
        let direct = m.act(&alpha).unwrap();
        for mid in 1..=4 {
            for b in cat.hom(1, mid).morphisms() {
                for g in cat.hom(mid, 4).morphisms() {
                    if cat.compose(g, b) == alpha {
                        let prod = m.act(g).unwrap().mul(m.field(), &m.act(b).unwrap());
                        assert_eq!(prod, direct);
                    }
                }
            }
        }
    }
}

fn check_functorial<F: Field>(m: &TruncatedModule<F>) {
    let cat = m.category().clone();
    let h = m.horizon() as usize;
    for r in 0..=h {
        for s in r..=h {
            for t in s..=h {
                let (ab, bc) = (cat.hom(r, s), cat.hom(s, t));
                for a in ab.morphisms().iter().step_by(3) {
                    for b in bc.morphisms().iter().step_by(4) {
                        let left = m.act(&cat.compose(b, a)).unwrap();
                        let right = m.act(b).unwrap().mul(m.field(), &m.act(a).unwrap());
                        assert_eq!(left, right, "{} {}", cat.format_morphism(a), cat.format_morphism(b));
                    }
                }
            }
        }
    }
}

#[test]
fn action_is_functorial() {
    check_functorial(&oi_torsion(4));
    check_functorial(&fi_torsion(4));
    check_functorial(&oig_mixed(3));
    check_functorial(&TruncatedModule::free(fi(), q(), 1, 4));
    let cat = Arc::new(Category::new(Kind::FiG, Some(Group::cyclic(2).unwrap())).unwrap());
    check_functorial(&TruncatedModule::free_sum(cat, q(), &[0, 1], 3));
}

#[test]
fn presentation_examples() {
    assert_eq!(oi_torsion(4).dims(), &[0, 1, 1, 1, 1]);
    assert_eq!(fi_torsion(5).dims(), &[1, 0, 0, 0, 0, 0]);
    let p: Presentation<BigRational> = Presentation::with_degrees(&[1, 0]);
    let (v, proj) = p.module(oi(), &q(), 4);
    assert_eq!(*v, TruncatedModule::free_sum(oi(), q(), &[1, 0], 4));
    assert!(proj.commutes());
}

#[test]
fn presented_modules_match_direct_quotients() {
    let v = oi_torsion(5);
    let m1 = Arc::new(TruncatedModule::free(oi(), q(), 1, 5));
    let (_, proj) = ModuleMap::identity(m1.clone()).cokernel();
    assert_eq!(proj.codomain().total_dim(), 0);
    let sub = Submodule::generated_by(m1.clone(), &[(2, vec![ratio(0), ratio(1)])]);
    assert_eq!(sub.dims(), vec![0, 0, 1, 2, 3, 4]);
    assert!(sub.is_closed());
    let (im, incl) = sub.module();
    assert!(incl.is_injective() && incl.commutes());
    let (quo, proj) = incl.quotient_by().unwrap();
    assert_eq!(quo.dims(), &[0, 1, 1, 1, 1, 1]);
    assert_eq!(*quo, *v);
    assert!(proj.commutes());
    assert!(proj.compose(&incl).unwrap().is_zero());
    assert_eq!(im.dims(), &[0, 0, 1, 2, 3, 4]);
}

#[test]
fn kernel_examples() {
    let m = Arc::new(TruncatedModule::free(oi(), q(), 1, 4));
    let (k, _) = ModuleMap::identity(m.clone()).kernel_of_map();
    assert!(k.is_zero());
    let (k, incl) = ModuleMap::zero(m.clone(), m.clone()).kernel_of_map();
    assert_eq!(*k, *m);
    assert!(incl.commutes());

    let sub = Submodule::generated_by(m.clone(), &[(2, vec![ratio(0), ratio(1)])]);
    let (_, proj) = sub.quotient();
    let (k, incl) = proj.kernel_of_map();
    assert_eq!(k.dims(), &[0, 0, 1, 2, 3]);
    assert!(incl.commutes());
    check_functorial(&k);
}

#[test]
fn quotient_examples() {
    let m = Arc::new(TruncatedModule::free(fi(), q(), 1, 3));
    let zero = Submodule::zero(m.clone());
    let (quo, proj) = zero.quotient();
    assert_eq!(*quo, *m);
    assert!(proj.mats().iter().enumerate().all(|(t, p)| *p == Mat::identity(&q(), m.dim(t))));
    let (quo, _) = Submodule::whole(m.clone()).quotient();
    assert!(quo.is_zero());
    let z = ModuleMap::zero(m.clone(), m.clone());
    assert_eq!(z.quotient_by().unwrap_err(), Error::NotInjective(1));
}

#[test]
fn direct_sum_examples() {
    let (m1, m0) = (TruncatedModule::free(oi(), q(), 1, 3), TruncatedModule::free(oi(), q(), 0, 3));
    let s = m1.direct_sum(&m0).unwrap();
    assert_eq!(s.dims(), &[1, 2, 3, 4]);
    assert_eq!(s.free_layout().unwrap().generator_degrees(), &[1, 0]);
    check_functorial(&s);
    let z = TruncatedModule::zero(oi(), q(), 3);
    assert_eq!(m1.direct_sum(&z).unwrap(), m1);
    let f2 = TruncatedModule::free(fi(), q(), 2, 4);
    let f1 = TruncatedModule::free(fi(), q(), 1, 5);
    let s = f2.direct_sum(&f1).unwrap();
    assert_eq!(s.dims(), &[0, 1, 4, 9, 16]);
    let t = oi_torsion(4).direct_sum(&TruncatedModule::free(oi(), q(), 0, 4)).unwrap();
    assert_eq!(t.dims(), &[1, 2, 2, 2, 2]);
    check_functorial(&t);
    assert!(m1.direct_sum(&f1).is_err());
}

#[test]
fn rank_nullity_and_induced_squares() {
    let v = oig_mixed(4);
    let (_, proj) = {
        let file = parse_presentation_file(
            "catrep-presentation 1\ncategory oi_g\ngroup z/2\ngen a deg 1\ngen b deg 1\n\
             rel 2: 1*1->2:[1](0)@a + 2*1->2:[2](1)@b\nrel 1: 1*1->1:[1](1)@a + -1*1->1:[1](0)@b\n",
        )
        .unwrap();
        let cat = Arc::new(file.category().unwrap());
        let f = Fp::new(5).unwrap();
        file.presentation(&cat, &f).unwrap().module(cat, &f, 4)
    };
    assert_eq!(*proj.codomain().as_ref(), *v);
    assert!(proj.commutes());
    let k = proj.kernel();
    let im = proj.image();
    for t in 0..=4 {
        assert_eq!(k.span(t).dim() + im.span(t).dim(), proj.domain().dim(t));
    }
    let (_, incl) = k.module();
    assert!(incl.commutes());
    assert!(proj.compose(&incl).unwrap().is_zero());
    assert!(k.is_closed());
}

#[test]
fn preimage_of_a_submodule() {
    let m = Arc::new(TruncatedModule::free(oi(), q(), 1, 4));
    let sub = Submodule::generated_by(m.clone(), &[(2, vec![ratio(0), ratio(1)])]);
    let (_, proj) = sub.quotient();
    let back = proj.preimage(&Submodule::zero(proj.codomain().clone()));
    assert_eq!(back, sub);
    let all = proj.preimage(&Submodule::whole(proj.codomain().clone()));
    assert_eq!(all.dims(), m.dims());
}

#[test]
fn text_round_trip() {
    let text = "catrep-presentation 1\n# comment\ncategory oi_g\ngroup z/2\nfield fp:5\nhorizon 4\n\
                gen a deg 1\ngen b deg 1\n\
                rel 2: 1*1->2:[1](0)@a + 2*1->2:[2](1)@b + 3*1->2:[2](1)@b\n\
                rel 1: 1*1->1:[1](1)@a + -1*1->1:[1](0)@b\nrel 3: 0*1->3:[1](0)@a\n";
    let file = parse_presentation_file(text).unwrap();
    assert_eq!(file.horizon, Some(4));
    assert_eq!(file.field, Some(FieldSpec::Prime(5)));
    let cat = Arc::new(file.category().unwrap());
    let f = Fp::new(5).unwrap();
    let p = file.presentation(&cat, &f).unwrap();
    let out = p.emit(&cat, &f, 4);
    assert!(out.contains("rel 2: 1*1->2:[1](0)@a\n"), "{out}");
    assert!(!out.contains("rel 3"));
    let again = parse_presentation_file(&out).unwrap();
    let p2 = again.presentation(&cat, &f).unwrap();
    assert_eq!(p2.emit(&cat, &f, 4), out);
    assert_eq!(*p2.module(cat.clone(), &f, 4).0, *p.module(cat, &f, 4).0);
}

#[test]
fn table_groups_round_trip() {
    let text = "catrep-presentation 1\ncategory fi_g\ngroup table 2\nrow 0 1\nrow 1 0\nfield q\nhorizon 2\n\
                gen x deg 1\nrel 1: 1/2*1->1:[1](1)@x + -1/2*1->1:[1](0)@x\n";
    let file = parse_presentation_file(text).unwrap();
    let cat = Arc::new(file.category().unwrap());
    let p = file.presentation(&cat, &q()).unwrap();
    let out = p.emit(&cat, &q(), 2);
    assert!(out.contains("group table 2\nrow 0 1\nrow 1 0\n"));
    assert!(out.contains("1/2*1->1:[1](1)@x + -1/2*1->1:[1](0)@x"));
    assert_eq!(parse_presentation_file(&out).unwrap().presentation(&cat, &q()).unwrap(), p);
    // x = g·x forces the two labelled copies together
    assert_eq!(p.module(cat, &q(), 2).0.dims(), &[0, 1, 2]);
}

fn parse_error(text: &str) -> (usize, usize) {
    let file = parse_presentation_file(text);
    let err = match file {
        Err(e) => e,
        Ok(file) => {
            let cat = file.category().unwrap();
            file.presentation(&cat, &Fp::new(3).unwrap()).unwrap_err()
        }
    };
    match err {
        Error::Parse { line, column, .. } => (line, column),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn parse_errors_carry_positions() {
    assert_eq!(parse_error("catrep-presentation 2\n"), (1, 1));
    assert_eq!(parse_error("catrep-presentation 1\ncategory xx\n"), (2, 10));
    assert_eq!(parse_error("catrep-presentation 1\ncategory oi\nfrobnicate\n"), (3, 1));
    assert_eq!(parse_error("catrep-presentation 1\ncategory oi\ngen x deg q\n"), (3, 11));
    let base = "catrep-presentation 1\ncategory oi\ngen x deg 1\n";
    assert_eq!(parse_error(&format!("{base}rel 2: 1*1->2:[2]@y\n")), (4, 19));
    assert_eq!(parse_error(&format!("{base}rel 2: 1*1->2:[3]@x\n")), (4, 10));
    assert_eq!(parse_error(&format!("{base}rel 2: 1*1->2:[2]@x + 1/3*1->2:[1]@x\n")), (4, 23));
    assert_eq!(parse_error(&format!("{base}rel 2: 1*2->3:[2,3]@x\n")), (4, 10));
    assert_eq!(parse_error(&format!("{base}rel 2: a*1->2:[2]@x\n")), (4, 8));
    assert_eq!(parse_error("catrep-presentation 1\ngroup table 2\nrow 0 1\n"), (2, 7));
}

#[test]
fn field_spec_parsing() {
    assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
    assert_eq!(FieldSpec::parse("fp:101").unwrap(), FieldSpec::Prime(101));
    assert!(FieldSpec::parse("fp:100").is_err());
    assert!(FieldSpec::parse("r").is_err());
    assert_eq!(FieldSpec::Prime(7).to_string(), "fp:7");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_relations_give_closed_quotients(
        coeffs in proptest::collection::vec(0u32..3, 6),
        picks in proptest::collection::vec(0usize..6, 6),
    ) {
        let cat = fi();
        let f = Fp::new(3).unwrap();
        let mut p = Presentation::with_degrees(&[0, 1]);
        let homs = [cat.hom(0, 2), cat.hom(1, 2)];
        let mut terms = Vec::new();
        for (k, (&c, &i)) in coeffs.iter().zip(&picks).enumerate() {
            let g = k % 2;
            let h = &homs[g];
            terms.push(Term { coeff: c, morphism: h.morphisms()[i % h.len()].clone(), generator: g });
        }
        p.add_relation(Relation { target: 2, terms }).unwrap();
        let sub = p.relation_submodule(cat.clone(), &f, 4);
        prop_assert!(sub.is_closed());
        let (v, proj) = sub.quotient();
        prop_assert!(proj.commutes());
        for t in 0..=4 {
            prop_assert_eq!(v.dim(t) + sub.span(t).dim(), proj.domain().dim(t));
        }
        check_functorial(&v);
    }
}
