use super::*;
use crate::calculus::BundleMorphism;
use crate::fixtures::*;
use crate::pn::{cotangent_algebroid, nstar_pullback, NStarMode};
use crate::report::{FamilyParams, Report};

fn half() -> RF {
    RF::ratio(1, 2)
}

fn quick() -> FamilyParams {
    FamilyParams::new(FamilyParams::DEFAULT_SEED, 4, 2)
}

fn v(a: &Algebroid, i: usize) -> DoubleSection {
    DoubleSection::from_vector(a.frame(i))
}

fn f(a: &Algebroid, i: usize) -> DoubleSection {
    DoubleSection::from_form(a.coframe(i))
}

/// (TR², A*_π) for π = ∂1∧∂2.
fn triangular() -> QuasiLieBialgebroid {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    let dual = cotangent_algebroid(&a, &pi, None).unwrap();
    QuasiLieBialgebroid::new(a, dual, GradedSection::zero(Variance::Multivector, 2, 3)).unwrap()
}

fn samples(e: &CourantDouble) -> Vec<DoubleSection> {
    let fam = CourantFamily::new(e, &quick());
    fam.frame.into_iter().chain(fam.scaled).chain(fam.random).map(|(_, s)| s).collect()
}

#[test]
fn dorfman_examples() {
    let a = tr(2);
    let e = CourantDouble::standard(&a);
    let x1dx2 = f(&a, 1).scale(&x(1));
    assert_eq!(e.dorfman(&v(&a, 0), &x1dx2).unwrap(), f(&a, 1));
    assert!(e.dorfman(&f(&a, 0), &x1dx2).unwrap().is_zero());
    assert_eq!(e.skew_bracket(&v(&a, 0), &x1dx2).unwrap(), f(&a, 1));
    let wrong = DoubleSection::zero(3);
    assert_eq!(e.dorfman(&v(&a, 0), &wrong), Err(Error::ParentMismatch));
}

#[test]
fn twist_contracts_phi() {
    let a = tr(3);
    let phi = vol(&a);
    let tw = CourantDouble::twisted(&a, &phi).unwrap();
    assert_eq!(tw.dorfman(&v(&a, 0), &v(&a, 1)).unwrap(), f(&a, 2));
    // the same twist seen from the quasi-Lie bialgebroid (A*, d, φ)
    let q = QuasiLieBialgebroid::from_closed3form(&a, &phi).unwrap();
    let e = CourantDouble::qlb_double(&q);
    assert_eq!(e.dorfman(&f(&a, 0), &f(&a, 1)).unwrap(), v(&a, 2));
}

#[test]
fn skew_bracket_examples() {
    let g = aff1();
    let e = CourantDouble::standard(&g);
    assert_eq!(e.skew_bracket(&v(&g, 0), &v(&g, 1)).unwrap().vector, g.bracket(&g.frame(0), &g.frame(1)));
    let q = triangular();
    let e = CourantDouble::qlb_double(&q);
    assert!(e.skew_bracket(&f(&q.base, 0), &f(&q.base, 1)).unwrap().is_zero());
}

#[test]
fn skew_bracket_is_skew() {
    let (a, pi, phi) = twisted_r4();
    let doubles = vec![
        CourantDouble::standard(&tr(2)),
        CourantDouble::twisted(&tr(3), &vol(&tr(3))).unwrap(),
        CourantDouble::qlb_double(&QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi).unwrap()),
        CourantDouble::qlb_double(&triangular()).conjugate(),
    ];
    for e in doubles {
        let fr = e.frame();
        for p in &fr {
            for q in &fr {
                let s = e.skew_bracket(p, q).unwrap().add(&e.skew_bracket(q, p).unwrap());
                assert!(s.is_zero(), "{} on {p}, {q}", e.label());
            }
        }
    }
}

#[test]
fn standard_double_axioms_and_kappa() {
    let e = CourantDouble::standard(&tr(2));
    let rep = verify_courant_axioms(&e, &FamilyParams::default(), &half());
    assert!(rep.passed(), "{rep}");
    let rep = verify_courant_axioms(&e, &FamilyParams::default(), &RF::one());
    assert!(!rep.passed());
    let failing: Vec<&str> = rep.failing().map(|c| c.name.as_str()).collect();
    assert_eq!(failing, ["C2"]);
}

#[test]
fn twisted_doubles_and_closedness() {
    // every 3-form on R³ is closed
    let a = tr(3);
    let e = CourantDouble::twisted(&a, &vol(&a).scale(&x(1))).unwrap();
    assert!(verify_courant_axioms(&e, &quick(), &half()).passed());

    let a = tr(4);
    let psi = a.coframe(0).wedge(&a.coframe(1)).wedge(&a.coframe(2)).scale(&x(4));
    assert!(!a.differential(&psi).is_zero());
    let rep = verify_courant_axioms(&CourantDouble::twisted(&a, &psi).unwrap(), &quick(), &half());
    assert!(!rep.clause("C1").unwrap().pass);
    assert!(rep.clause("C3").unwrap().pass);
}

#[test]
fn quasi_lie_bialgebroid_doubles_are_courant() {
    let (a, pi, phi) = twisted_r4();
    let q = QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi).unwrap();
    assert!(verify_courant_axioms(&CourantDouble::qlb_double(&q), &quick(), &half()).passed());
    let (a, pi, n, phi) = e3();
    let q = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap();
    assert!(verify_courant_axioms(&CourantDouble::qlb_double(&q), &quick(), &half()).passed());
}

#[test]
fn twisted_by_zero_is_standard() {
    let a = tr(3);
    let tw = CourantDouble::twisted(&a, &GradedSection::zero(Variance::Form, 3, 3)).unwrap();
    let st = CourantDouble::standard(&a);
    let ss = samples(&st);
    for p in &ss {
        for q in &ss[..6] {
            assert_eq!(tw.dorfman(p, q).unwrap(), st.dorfman(p, q).unwrap());
        }
    }
}

/// The Lie bialgebroid double: [X,Y] + L*_α Y − i_β d_* X + [α,β]_* + L_X β − i_Y dα.
fn bialgebroid_dorfman(q: &QuasiLieBialgebroid, e1: &DoubleSection, e2: &DoubleSection) -> DoubleSection {
    let (a, d) = (&q.base, &q.dual);
    let (x, alpha, y, beta) = (&e1.vector, &e1.form, &e2.vector, &e2.form);
    let vector = a
        .bracket(x, y)
        .add(&d.lie_derivative(&alpha.flip(), &y.flip()).flip())
        .sub(&beta.flip().insert_into(&d.differential(&x.flip())).flip());
    let form = d
        .bracket(&alpha.flip(), &beta.flip())
        .flip()
        .add(&a.lie_derivative(x, beta))
        .sub(&y.insert_into(&a.differential(alpha)));
    DoubleSection::new(vector, form)
}

#[test]
fn zero_twist_gives_the_bialgebroid_double() {
    let (a, pi, n, phi) = pn4();
    for q in [QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap(), triangular()] {
        let e = CourantDouble::qlb_double(&q);
        let ss = samples(&e);
        for p in &ss {
            for r in &ss {
                assert_eq!(e.dorfman(p, r).unwrap(), bialgebroid_dorfman(&q, p, r));
            }
        }
    }
}

#[test]
fn conjugate_negates_only_the_pairing() {
    let (a, pi, phi) = twisted_r4();
    let q = QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi).unwrap();
    for e in [CourantDouble::qlb_double(&q), CourantDouble::twisted(&tr(3), &vol(&tr(3))).unwrap()] {
        let c = e.conjugate();
        assert_eq!(c.conjugate(), e);
        let ss = samples(&e);
        for p in &ss[..8] {
            assert_eq!(c.anchor(p).unwrap(), e.anchor(p).unwrap());
            for r in &ss {
                assert_eq!(c.pairing(p, r).unwrap(), -e.pairing(p, r).unwrap());
                assert_eq!(c.dorfman(p, r).unwrap(), e.dorfman(p, r).unwrap());
            }
        }
        assert!(verify_courant_axioms(&c, &quick(), &half()).passed());
    }
}

#[test]
fn product_of_standard_doubles() {
    let a = tr(1);
    let p = CourantDouble::standard(&a).product(&CourantDouble::standard(&a));
    let names = Algebroid::coords_from(&["x1", "x1_2"]);
    let s = CourantDouble::standard(&Algebroid::tangent(names));
    assert_eq!(p.coords(), s.coords());
    for e1 in &samples(&s) {
        for e2 in &samples(&s) {
            assert_eq!(p.dorfman(e1, e2).unwrap(), s.dorfman(e1, e2).unwrap());
            assert_eq!(p.pairing(e1, e2).unwrap(), s.pairing(e1, e2).unwrap());
        }
    }
}

#[test]
fn tangent_conormal_dirac_iff_pullback_vanishes() {
    let a = tr(4);
    let phi = vol(&a);
    let e = CourantDouble::twisted(&a, &phi).unwrap();
    let f = GeneralizedDirac::tangent_conormal(a.coords(), &["x3"]).unwrap();
    let rep = check_generalized_dirac(&e, &f);
    assert!(rep.passed(), "{rep}");
    let f = GeneralizedDirac::tangent_conormal(a.coords(), &["x4"]).unwrap();
    let rep = check_generalized_dirac(&e, &f);
    assert!(!rep.passed());
    assert!(rep.failing().all(|c| c.name.starts_with("D3")));
    assert!(!rep.clause("D3(g1,g2)").unwrap().pass);
}

#[test]
fn bivector_graphs() {
    let a = tr(3);
    let e = CourantDouble::standard(&a);
    let poisson = a.frame(0).wedge(&a.frame(1)).scale(&x(3)).add(&a.frame(1).wedge(&a.frame(2)));
    assert!(check_generalized_dirac(&e, &GeneralizedDirac::bivector_graph(&poisson)).passed());
    let other = a.frame(0).wedge(&a.frame(1)).add(&a.frame(1).wedge(&a.frame(2)).scale(&x(2)));
    let rep = check_generalized_dirac(&e, &GeneralizedDirac::bivector_graph(&other));
    assert!(!rep.passed());
    assert!(rep.failing().all(|c| c.name.starts_with("D3")));
}

#[test]
fn dirac_rank_and_tangency() {
    let a = tr(2);
    let e = CourantDouble::standard(&a);
    let p = Submanifold::coordinate_subspace(a.coords(), &["x2"]).unwrap();
    let short = GeneralizedDirac::new(p.clone(), vec![v(&a, 0)]);
    assert!(!check_generalized_dirac(&e, &short).clause("D1.rank").unwrap().pass);
    let leaving = GeneralizedDirac::new(p, vec![v(&a, 1), f(&a, 0)]);
    let rep = check_generalized_dirac(&e, &leaving);
    assert!(!rep.clause("D2(g1)").unwrap().pass);
}

fn split(q: &QuasiLieBialgebroid, l: &[usize], vanishing: &[&str]) -> Report {
    let p = Submanifold::coordinate_subspace(q.base.coords(), vanishing).unwrap();
    let l = SplitSubbundle::new(p, q.rank(), l.iter().map(|&i| q.base.frame(i)).collect()).unwrap();
    check_split_dirac(q, &l)
}

#[test]
fn split_dirac_biconditional() {
    let a = tr(3);
    let q = QuasiLieBialgebroid::from_closed3form(&a, &vol(&a)).unwrap();

    let rep = split(&q, &[2], &["x3"]);
    assert!(rep.passed(), "{rep}");

    // ρ_{A*}(E3) = ∂3 leaves {x3 = 0}
    let rep = split(&q, &[0, 1], &["x3"]);
    assert!(!rep.passed());
    assert!(rep.clause("biconditional").unwrap().pass);
    assert!(!rep.clause("cond3.anchor(m1)").unwrap().pass);
    assert!(rep.clause("cond4.twist(m1,m2,m3)").is_none());

    // with P = {x1 = 0} the same L passes
    assert!(split(&q, &[0, 1], &["x1"]).passed());

    // L^⊥ = A* everywhere: the twist does not vanish on it
    let rep = split(&q, &[], &[]);
    assert!(!rep.passed());
    assert!(rep.clause("biconditional").unwrap().pass);
}

#[test]
fn split_dirac_for_lie_bialgebroids() {
    let q = triangular();
    let rep = split(&q, &[0], &["x2"]);
    assert!(rep.passed(), "{rep}");
    let rep = split(&q, &[1], &["x2"]);
    assert!(!rep.passed());
    assert!(!rep.clause("cond1.anchor(l1)").unwrap().pass);
    assert!(rep.clause("biconditional").unwrap().pass);
}

#[test]
fn morphism_graphs() {
    let (a, pi, n, _) = e3();
    let psi = vol(&a);
    let qa = QuasiLieBialgebroid::from_closed3form(&a, &psi).unwrap();
    let id = BundleMorphism::identity(&qa.base);
    let (e, f) = build_morphism_graph(&id, &qa, &qa).unwrap();
    assert_eq!(e.rank(), 6);
    assert!(check_generalized_dirac(&e, &f).passed());

    let phi = nstar_pullback(&n, &psi, NStarMode::Multiplicative);
    let qb = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap();
    let nstar = BundleMorphism::same_base(qa.base.clone(), qb.base.clone(), n.transpose().rows().to_vec()).unwrap();
    let (e, f) = build_morphism_graph(&nstar, &qa, &qb).unwrap();
    let rep = check_generalized_dirac(&e, &f);
    assert!(rep.passed(), "{rep}");

    let bad = QuasiLieBialgebroid::new(qb.base.clone(), qb.dual.clone(), psi.flip()).unwrap();
    let (e, f) = build_morphism_graph(&nstar, &qa, &bad).unwrap();
    let rep = check_generalized_dirac(&e, &f);
    assert!(!rep.passed());
    assert!(rep.failing().all(|c| c.name.starts_with("D3")));

    let other = BundleMorphism::identity(&tr(2));
    assert!(matches!(build_morphism_graph(&other, &qa, &qb), Err(Error::MalformedMorphism(_))));
}
