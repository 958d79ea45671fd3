use algebroid_forge::calculus::section::index_tuples;
use algebroid_forge::courant::verify_courant_axioms;
use algebroid_forge::pn::{check_compatible, check_pqn, verify_lemma_tnstar, QuasiLieBialgebroid};
use algebroid_forge::report::FamilyParams;
use algebroid_forge::{
    Algebroid, CourantDouble, DoubleSection, Endo, GradedSection, RationalFunction as RF, Variance,
};
use proptest::prelude::*;

fn tr(n: usize) -> Algebroid {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Algebroid::tangent(Algebroid::coords_from(&names))
}

fn params() -> FamilyParams {
    FamilyParams::new(11, 2, 2)
}

#[test]
fn poisson_nijenhuis_to_courant() {
    let a = tr(4);
    let pi = a.frame(0).wedge(&a.frame(2)).add(&a.frame(1).wedge(&a.frame(3)));
    let x = |i: &str| RF::var(i);
    let n = Endo::diagonal(vec![x("x1"), x("x2"), x("x1"), x("x2")]);
    let phi = GradedSection::zero(Variance::Form, 4, 3);
    assert!(check_compatible(&a, &pi, &n).passed());
    assert!(check_pqn(&a, &pi, &n, &phi).passed());
    assert!(verify_lemma_tnstar(&a, &pi, &n, &phi).passed());

    let q = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap();
    assert!(q.x.is_zero());
    assert!(q.check(&params()).passed());
    let e = CourantDouble::qlb_double(&q);
    let report = verify_courant_axioms(&e, &params(), &RF::ratio(1, 2));
    assert!(report.passed(), "{report}");

    let scalar = Endo::diagonal(vec![x("x1"); 4]);
    let failing: Vec<String> = check_pqn(&a, &pi, &scalar, &phi)
        .failing()
        .map(|c| c.name.clone())
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c.starts_with("n-pi-sharp")), "{failing:?}");
}

#[test]
fn twisted_poisson_double_on_r4() {
    let a = tr(4);
    let x1 = RF::var("x1");
    let pi = a.frame(0).wedge(&a.frame(1)).add(&a.frame(2).wedge(&a.frame(3)).scale(&x1));
    // Inverse of pi is dx12 + (1/x1) dx34, so phi = d(omega) = -(1/x1^2) dx134.
    let phi = a
        .coframe(0)
        .wedge(&a.coframe(2))
        .wedge(&a.coframe(3))
        .scale(&-&x1.pow(-2).unwrap());
    let q = QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi).unwrap();
    assert!(q.check(&params()).passed());
    let e = CourantDouble::qlb_double(&q);
    assert!(verify_courant_axioms(&e, &params(), &RF::ratio(1, 2)).passed());
    assert!(QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi.neg()).is_err());
}

/// Action algebroid of so(3) on R³.
fn so3_action() -> Algebroid {
    let coords = Algebroid::coords_from(&["x1", "x2", "x3"]);
    let x = |i: usize| RF::var(["x1", "x2", "x3"][i]);
    let z = RF::zero;
    let anchor = vec![
        vec![z(), x(2), -&x(1)],
        vec![-&x(2), z(), x(0)],
        vec![x(1), -&x(0), z()],
    ];
    let mut structure = vec![vec![vec![z(); 3]; 3]; 3];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        structure[i][j][k] = RF::one();
        structure[j][i][k] = RF::integer(-1);
    }
    Algebroid::new(coords, anchor, structure).unwrap()
}

fn poly() -> impl Strategy<Value = RF> {
    prop::collection::vec((-2i64..=2, 0i32..=1, 0i32..=1, 0i32..=1), 0..3).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(c, a, b, d)| {
                let m = &(&RF::var("x1").pow(a).unwrap() * &RF::var("x2").pow(b).unwrap()) * &RF::var("x3").pow(d).unwrap();
                &RF::integer(c) * &m
            })
            .sum()
    })
}

fn double_section() -> impl Strategy<Value = DoubleSection> {
    prop::collection::vec(poly(), 6).prop_map(|c| DoubleSection::from_coefficients(3, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dorfman_symmetric_part_is_exact(e1 in double_section(), e2 in double_section()) {
        let e = CourantDouble::standard(&so3_action());
        let sym = e.dorfman(&e1, &e2).unwrap().add(&e.dorfman(&e2, &e1).unwrap());
        prop_assert_eq!(sym, e.rho_star_d(&e.pairing(&e1, &e2).unwrap()));
        let skew = e.dorfman(&e1, &e2).unwrap().sub(&e.dorfman(&e2, &e1).unwrap());
        prop_assert_eq!(skew, e.skew_bracket(&e1, &e2).unwrap().scale(&RF::integer(2)));
    }

    #[test]
    fn anchor_is_a_bracket_morphism(e1 in double_section(), e2 in double_section(), f in poly()) {
        let e = CourantDouble::standard(&so3_action());
        let act = |s: &DoubleSection, g: &RF| e.act(s, g).unwrap();
        let lhs = act(&e.dorfman(&e1, &e2).unwrap(), &f);
        let rhs = &act(&e1, &act(&e2, &f)) - &act(&e2, &act(&e1, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_symmetric_and_invariant(e1 in double_section(), e2 in double_section(), e3 in double_section()) {
        let e = CourantDouble::standard(&so3_action());
        let p = |a: &DoubleSection, b: &DoubleSection| e.pairing(a, b).unwrap();
        prop_assert_eq!(p(&e1, &e2), p(&e2, &e1));
        let lhs = e.act(&e1, &p(&e2, &e3)).unwrap();
        let rhs = &p(&e.dorfman(&e1, &e2).unwrap(), &e3) + &p(&e2, &e.dorfman(&e1, &e3).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_keeps_bracket_and_negates_pairing(e1 in double_section(), e2 in double_section()) {
        let e = CourantDouble::standard(&so3_action());
        let c = e.conjugate();
        prop_assert_eq!(c.dorfman(&e1, &e2).unwrap(), e.dorfman(&e1, &e2).unwrap());
        prop_assert_eq!(c.pairing(&e1, &e2).unwrap(), -&e.pairing(&e1, &e2).unwrap());
    }
}

#[test]
fn index_tuples_are_increasing() {
    for (r, k, count) in [(4, 2, 6), (5, 3, 10), (3, 0, 1), (2, 3, 0)] {
        let t = index_tuples(r, k);
        assert_eq!(t.len(), count);
        assert!(t.iter().all(|i| i.windows(2).all(|w| w[0] < w[1])));
    }
}
