use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::algebra::{rel_quantale, trivial, two, FinBiclosedPoset};
use crate::sequent::{check_derivation, eliminate_cut, Derivation};
use crate::syntax::{CalculusLevel, Formula};

fn a() -> Formula {
    Formula::atom("a")
}

fn b() -> Formula {
    Formula::atom("b")
}

fn obj(d: &Dial, u: usize, x: usize, alpha: &[usize]) -> DialObject {
    d.base(u, x, alpha.to_vec()).unwrap()
}

fn all_pairs<'m>(d: &Dial<'m>) -> Vec<DialObject> {
    // a few small objects over the host
    let n = d.host.len();
    vec![
        obj(d, 1, 1, &[n - 1]),
        obj(d, 2, 1, &[0, n - 1]),
        obj(d, 1, 2, &[n - 1, 0]),
        obj(d, 2, 2, &[0, n - 1, n - 1, 0]),
    ]
}

#[test]
fn identity_and_constant_unit_objects() {
    let m = two();
    let d = Dial::new(&m);
    for a in all_pairs(&d) {
        let id = d.id(&a).unwrap();
        assert_eq!(d.is_morphism(&a, &a, &id.f, &id.big_f).unwrap(), None);
    }
    let e = m.unit;
    let a = d.constant(2, 2, e).unwrap();
    let b = d.constant(2, 1, e).unwrap();
    for f in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        for big_f in [[0], [1]] {
            assert_eq!(d.is_morphism(&a, &b, &f, &big_f).unwrap(), None);
        }
    }
}

#[test]
fn failing_adjointness_reports_witness() {
    let m = two();
    let d = Dial::new(&m);
    let a = d.base(1, 1, vec![1]).unwrap();
    let b = d.base(1, 1, vec![0]).unwrap();
    assert_eq!(d.is_morphism(&a, &b, &[0], &[0]).unwrap(), Some((0, 0)));
    assert_eq!(d.morphism(&a, &b, vec![0], vec![0]), Err(DialError::NotAMorphism { u: 0, y: 0 }));
    assert!(matches!(
        d.is_morphism(&a, &b, &[0, 0], &[0]),
        Err(DialError::ShapeMismatch(_))
    ));
}

#[test]
fn composition_and_identities() {
    let m = two();
    let d = Dial::new(&m);
    let a = obj(&d, 2, 2, &[0, 1, 1, 0]);
    let b = obj(&d, 2, 2, &[1, 1, 1, 1]);
    let f = d.morphism(&a, &b, vec![1, 0], vec![1, 0]).unwrap();
    let g = d.morphism(&b, &b, vec![0, 0], vec![1, 1]).unwrap();
    assert_eq!(d.compose(&f, &d.id(&a).unwrap()).unwrap(), f);
    assert_eq!(d.compose(&d.id(&b).unwrap(), &f).unwrap(), f);
    let gf = d.compose(&g, &f).unwrap();
    assert_eq!(gf.f, vec![0, 0]);
    assert_eq!(
        d.compose(&g, &d.compose(&g, &f).unwrap()).unwrap(),
        d.compose(&d.compose(&g, &g).unwrap(), &f).unwrap()
    );
    assert!(matches!(d.compose(&f, &g), Err(DialError::ShapeMismatch(_))));
}

#[test]
fn unitors_are_inverse() {
    let m = two();
    let d = Dial::new(&m);
    for a in all_pairs(&d) {
        let id = d.id(&a).unwrap();
        let r = d.right_unitor(&a).unwrap();
        let ri = d.right_unitor_inv(&a).unwrap();
        assert_eq!(d.compose(&r, &ri).unwrap(), id);
        let ai = d.tensor_obj(&a, &DialObject::Unit).unwrap();
        assert_eq!(d.compose(&ri, &r).unwrap(), d.id(&ai).unwrap());
        let l = d.left_unitor(&a).unwrap();
        let li = d.left_unitor_inv(&a).unwrap();
        assert_eq!(d.compose(&l, &li).unwrap(), id);
    }
}

#[test]
fn constant_unit_tensor_is_constant_unit() {
    let m = rel_quantale(2);
    let d = Dial::new(&m);
    let a = d.constant(2, 1, m.unit).unwrap();
    let b = d.constant(1, 2, m.unit).unwrap();
    let t = d.tensor_obj(&a, &b).unwrap();
    for u in t.u_carrier().elements(100, "u").unwrap() {
        for x in t.x_carrier().elements(100, "x").unwrap() {
            assert_eq!(d.alpha(&t, &u, &x), m.unit);
        }
    }
}

fn parse_relation(name: &str) -> BTreeSet<(u8, u8)> {
    name.trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|p| {
            let b = p.as_bytes();
            (b[0] - b'0', b[1] - b'0')
        })
        .collect()
}

#[test]
fn tensor_of_points_is_relation_product() {
    let m = rel_quantale(2);
    let d = Dial::new(&m);
    for r in 0..m.len() {
        for s in 0..m.len() {
            let a = obj(&d, 1, 1, &[r]);
            let b = obj(&d, 1, 1, &[s]);
            let t = d.tensor_obj(&a, &b).unwrap();
            let got = d.alpha(&t, &t.u_carrier().decode(0), &t.x_carrier().decode(0));
            let (pr, ps) = (parse_relation(&m.names[r]), parse_relation(&m.names[s]));
            let expect: BTreeSet<(u8, u8)> = pr
                .iter()
                .flat_map(|&(i, j)| ps.iter().filter(move |&&(j2, _)| j2 == j).map(move |&(_, k)| (i, k)))
                .collect();
            assert_eq!(parse_relation(&m.names[got]), expect, "{} ; {}", m.names[r], m.names[s]);
        }
    }
}

/// Every morphism between two objects, by brute force over all tables.
fn hom_set(d: &Dial, a: &DialObject, b: &DialObject) -> Vec<DialMorphism> {
    let nu = a.u_carrier().size().unwrap();
    let nv = b.u_carrier().size().unwrap();
    let nx = a.x_carrier().size().unwrap();
    let ny = b.x_carrier().size().unwrap();
    let tables = |len: usize, radix: usize| -> Vec<Vec<usize>> {
        let total = radix.pow(len as u32);
        (0..total)
            .map(|mut i| {
                (0..len)
                    .map(|_| {
                        let r = i % radix;
                        i /= radix;
                        r
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = Vec::new();
    for f in tables(nu, nv) {
        for big_f in tables(ny, nx) {
            if d.is_morphism(a, b, &f, &big_f).unwrap().is_none() {
                out.push(d.morphism(a, b, f.clone(), big_f).unwrap());
            }
        }
    }
    out
}

#[test]
fn adjunctions_are_bijections() {
    let m = two();
    let d = Dial::new(&m).with_exec(crate::Exec::Sequential);
    let a = obj(&d, 2, 1, &[1, 0]);
    let b = obj(&d, 1, 2, &[0, 1]);
    let c = obj(&d, 2, 1, &[0, 1]);
    let ab = d.tensor_obj(&a, &b).unwrap();
    let lhs = hom_set(&d, &ab, &c);
    let rhs_r = hom_set(&d, &b, &d.hom_r(&a, &c).unwrap());
    let rhs_l = hom_set(&d, &a, &d.hom_l(&c, &b).unwrap());
    assert!(!lhs.is_empty());
    assert_eq!(lhs.len(), rhs_r.len());
    assert_eq!(lhs.len(), rhs_l.len());
    for mm in &lhs {
        assert_eq!(&d.uncurry_r(&d.curry_r(mm).unwrap()).unwrap(), mm);
        assert_eq!(&d.uncurry_l(&d.curry_l(mm).unwrap()).unwrap(), mm);
    }
    for n in &rhs_r {
        assert_eq!(&d.curry_r(&d.uncurry_r(n).unwrap()).unwrap(), n);
    }
    for n in &rhs_l {
        assert_eq!(&d.curry_l(&d.uncurry_l(n).unwrap()).unwrap(), n);
    }
}

#[test]
fn kappa_and_bang_tables() {
    let m = two();
    let d = Dial::new(&m);
    let a = obj(&d, 2, 2, &[0, 1, 1, 1]);
    let ka = d.kappa_obj(&a).unwrap();
    for u in 0..2 {
        for x in 0..2 {
            assert_eq!(
                d.alpha(&ka, &Val::Idx(u), &Val::Idx(x)),
                d.alpha(&a, &Val::Idx(u), &Val::Idx(x))
            );
        }
    }
    let bang = d.bang_obj(&a, 2).unwrap();
    let empty = Val::Fun(vec![Val::Bag(vec![]), Val::Bag(vec![])]);
    assert_eq!(d.alpha(&bang, &Val::Idx(0), &empty), m.unit);
    let both = Val::Fun(vec![Val::Bag(vec![0, 1]), Val::Bag(vec![])]);
    // meet of α(0,0) = 0 and α(0,1) = 1
    assert_eq!(d.alpha(&bang, &Val::Idx(0), &both), 0);
    let ones = Val::Fun(vec![Val::Bag(vec![1, 1]), Val::Bag(vec![])]);
    assert_eq!(d.alpha(&bang, &Val::Idx(0), &ones), 1);

    let mut no_kappa = two();
    no_kappa.kappa = None;
    assert_eq!(Dial::new(&no_kappa).kappa_obj(&a), Err(DialError::MissingKappaTable));
}

#[test]
fn comonad_arrows() {
    for m in [trivial(), two(), rel_quantale(2)] {
        let d = Dial::new(&m);
        let top = m.len() - 1;
        let a = obj(&d, 2, 1, &[0, top]);
        let b = obj(&d, 1, 2, &[top, 0]);
        let ka = d.kappa_obj(&a).unwrap();
        let eps = d.eps_kappa(&a).unwrap();
        let delta = d.delta_kappa(&a).unwrap();
        let kk_eps = d.eps_kappa(&ka).unwrap();
        assert_eq!(d.compose(&kk_eps, &delta).unwrap(), d.id(&ka).unwrap());
        assert_eq!(
            d.compose(&d.kappa_mor(&eps).unwrap(), &delta).unwrap(),
            d.id(&ka).unwrap()
        );
        let bl = d.beta_l(&a, &b).unwrap();
        let br = d.beta_r(&b, &a).unwrap();
        let kab = d.tensor_obj(&ka, &b).unwrap();
        assert_eq!(d.compose(&br, &bl).unwrap(), d.id(&kab).unwrap());
        d.e_arrow(&a, 2).unwrap();
        d.eps_bang(&a, 2).unwrap();
        if m.is_commutative() {
            d.d_arrow(&a, 2).unwrap();
            d.delta_bang(&a, 2, 2).unwrap();
        }
    }
}

#[test]
fn bound_is_enforced() {
    let m = two();
    let d = Dial::new(&m);
    let a = obj(&d, 1, 2, &[1, 1]);
    assert!(matches!(d.eps_bang(&a, 0), Err(DialError::BoundExceeded { .. })));
    assert!(matches!(d.bang_incl(&a, 1, 2), Err(DialError::BoundExceeded { .. })));
    d.bang_incl(&a, 2, 1).unwrap();
}

#[test]
fn size_cap_is_enforced() {
    let m = two();
    let d = Dial::new(&m).with_cap(50);
    let a = obj(&d, 2, 2, &[0, 1, 1, 0]);
    let t = d.tensor_obj(&a, &a).unwrap();
    assert!(matches!(d.tensor_obj(&t, &a), Err(DialError::SizeExceeded { .. })));
}

fn atoms(d: &Dial) -> BTreeMap<String, DialObject> {
    let top = d.host.len() - 1;
    let mut m = BTreeMap::new();
    m.insert("a".into(), obj(d, 2, 2, &[0, top, top, 0]));
    m.insert("b".into(), obj(d, 2, 1, &[top, 0]));
    m
}

#[test]
fn axiom_interprets_as_identity() {
    let m = two();
    let d = Dial::new(&m);
    let at = atoms(&d);
    let got = interpret(&d, &Derivation::ax(a()), &at, 2).unwrap();
    assert_eq!(got, d.id(&at["a"]).unwrap());
}

#[test]
fn exchange_interprets_as_beta_l() {
    let m = rel_quantale(2);
    let d = Dial::new(&m);
    let at = atoms(&d);
    let ka = Formula::kappa(a());
    let prem = Derivation::tr(Derivation::ax(b()), Derivation::ax(ka));
    let der = Derivation::e1(prem, 0);
    check_derivation(&der, CalculusLevel::LKappa).unwrap();
    let got = interpret(&d, &der, &at, 2).unwrap();
    assert_eq!(got, d.beta_l(&at["a"], &at["b"]).unwrap());
}

fn l_derivations() -> Vec<Derivation> {
    let ax = Derivation::ax;
    let ab = Formula::rimp(a(), b());
    let ba = Formula::limp(b(), a());
    vec![
        // a, a ⇀ b ⊢ b
        Derivation::ilr(ax(a()), ax(b()), 0),
        // b ↼ a, a ⊢ b
        Derivation::ill(ax(a()), ax(b()), 0),
        // ⊢ a ⇀ a
        Derivation::irr(ax(a())),
        // a ⇀ b ⊢ a ⇀ b, expanded
        Derivation::irr(Derivation::ilr(ax(a()), ax(b()), 0)),
        Derivation::irl(Derivation::ill(ax(a()), ax(b()), 0)),
        // a ⊗ b ⊢ a ⊗ b, expanded
        Derivation::tl(Derivation::tr(ax(a()), ax(b())), 0),
        // I, a ⊢ a and ⊢ I
        Derivation::ul(ax(a()), 0),
        Derivation::ur(),
        Derivation::tr(Derivation::ur(), ax(a())),
        // cut of a ⊢ a ⇀ b ⇀ b into it applied
        Derivation::cut(ax(ab.clone()), Derivation::ilr(ax(a()), ax(b()), 0), 1),
        Derivation::cut(ax(ba), Derivation::ill(ax(a()), ax(b()), 0), 0),
    ]
}

#[test]
fn l_derivations_interpret_soundly() {
    for m in [trivial(), two(), rel_quantale(2)] {
        let d = Dial::new(&m);
        let at = atoms(&d);
        for der in l_derivations() {
            check_derivation(&der, CalculusLevel::L).unwrap();
            let got = interpret(&d, &der, &at, 2);
            assert!(got.is_ok(), "{}: {:?}", der.conclusion, got.err());
        }
    }
}

#[test]
fn cut_and_cut_free_agree() {
    let m = rel_quantale(2);
    let d = Dial::new(&m);
    let at = atoms(&d);
    let ab = Formula::rimp(a(), b());
    let id_ab = Derivation::irr(Derivation::ilr(Derivation::ax(a()), Derivation::ax(b()), 0));
    let with_cut = Derivation::cut(id_ab, Derivation::ilr(Derivation::ax(a()), Derivation::ax(b()), 0), 1);
    check_derivation(&with_cut, CalculusLevel::L).unwrap();
    assert_eq!(with_cut.ctx(), &[a(), ab][..]);
    let free = eliminate_cut(&with_cut, 10_000).unwrap();
    assert!(free.is_cut_free());
    assert_eq!(
        interpret(&d, &with_cut, &at, 2).unwrap(),
        interpret(&d, &free, &at, 2).unwrap()
    );
}

#[test]
fn bang_derivations_interpret_on_commutative_hosts() {
    let ax = Derivation::ax;
    let ba = Formula::bang(a());
    let ders = vec![
        // !a ⊢ I
        Derivation::weaken(Derivation::ur(), 0, ba.clone()),
        // !a ⊢ a
        Derivation::bl(ax(a()), 0),
        // !a ⊢ !a ⊗ !a
        Derivation::contract(Derivation::tr(ax(ba.clone()), ax(ba.clone())), 0),
        // !a ⊢ !!a
        Derivation::br(ax(ba.clone())),
        // !a ⊢ !(a ⊗ a)
        Derivation::br(Derivation::contract(
            Derivation::tr(Derivation::bl(ax(a()), 0), Derivation::bl(ax(a()), 0)),
            0,
        )),
    ];
    for m in [trivial(), two()] {
        let d = Dial::new(&m);
        let mut at = BTreeMap::new();
        at.insert("a".to_string(), obj(&d, 1, 2, &[m.len() - 1, 0]));
        for der in &ders {
            check_derivation(der, CalculusLevel::LBang).unwrap();
            let got = interpret(&d, der, &at, 2);
            assert!(got.is_ok(), "{}: {:?}", der.conclusion, got.err());
        }
    }
}

#[test]
fn host_without_kappa_is_refused() {
    let mut m: FinBiclosedPoset = two();
    m.kappa = None;
    let d = Dial::new(&m);
    let at = atoms(&d);
    let der = Derivation::el(Derivation::ax(a()), 0);
    assert_eq!(interpret(&d, &der, &at, 2), Err(DialError::MissingKappaTable));
}
