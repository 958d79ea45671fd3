use super::*;
use crate::calculus::BundleMorphism;
use crate::pn::qlb::check_qlb_morphism;
use crate::fixtures::*;
use crate::report::{FamilyParams, Verdict};

#[test]
fn sharp_examples() {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    assert_eq!(pi_sharp(&pi, &a.coframe(0)), a.frame(1));
    assert_eq!(pi_sharp(&pi, &a.coframe(1)), a.frame(0).neg());
    let f = a.function(Variance::Form, x(2));
    assert_eq!(pi_sharp(&pi, &f), f.flip());
    let zero = GradedSection::zero(Variance::Multivector, 2, 2);
    assert!(pi_sharp(&zero, &a.coframe(0).scale(&x(1))).is_zero());
}

#[test]
fn extended_sharp_satisfies_its_defining_identity() {
    let (a, pi, _) = twisted_r4();
    let mu = a.coframe(0).wedge(&a.coframe(2)).scale(&x(3)).add(&a.coframe(1).wedge(&a.coframe(3)));
    let al = a.coframe(0).add(&a.coframe(3).scale(&x(2)));
    let be = a.coframe(2).sub(&a.coframe(1).scale(&x(1)));
    let lhs = al.wedge(&be).pairing(&pi_sharp(&pi, &mu));
    let rhs = mu.evaluate(&[&pi_sharp(&pi, &al), &pi_sharp(&pi, &be)]);
    assert_eq!(lhs, rhs);
    for i in 0..4 {
        for j in 0..4 {
            let lhs = a.coframe(j).pairing(&pi_sharp(&pi, &a.coframe(i)));
            let rhs = a.coframe(i).pairing(&pi_sharp(&pi, &a.coframe(j)));
            assert_eq!(lhs, -rhs);
        }
    }
}

#[test]
fn deformed_bracket_examples() {
    let a = tr(2);
    let (xv, yv) = (a.frame(0).scale(&x(2)), a.frame(1).scale(&x(1)));
    assert_eq!(deformed_bracket(&a, &Endo::identity(2), &xv, &yv), a.bracket(&xv, &yv));
    assert!(deformed_bracket(&a, &Endo::zero(2), &xv, &yv).is_zero());
    let g = aff1();
    let n = Endo::new(vec![vec![int(0), int(0)], vec![int(1), int(0)]]);
    assert_eq!(n.apply(&g.frame(0)), g.frame(1));
    assert!(deformed_bracket(&g, &n, &g.frame(0), &g.frame(1)).is_zero());
    assert!(nijenhuis_torsion(&g, &n, &g.frame(0), &g.frame(1)).is_zero());
}

#[test]
fn torsion_examples() {
    let a = tr(3);
    for i in 0..3 {
        for j in 0..3 {
            assert!(nijenhuis_torsion(&a, &Endo::identity(3), &a.frame(i), &a.frame(j)).is_zero());
            assert!(nijenhuis_torsion(&a, &diag3(), &a.frame(i), &a.frame(j)).is_zero());
        }
    }
    let bad = Endo::new(vec![
        vec![int(0), x(1), int(0)],
        vec![int(0), int(0), int(0)],
        vec![int(0), int(0), int(0)],
    ]);
    let mut all_zero = true;
    for i in 0..3 {
        for j in 0..3 {
            all_zero &= nijenhuis_torsion(&a, &bad, &a.frame(i), &a.frame(j)).is_zero();
        }
    }
    assert!(all_zero, "x1 ∂1⊗dx2 is Nijenhuis");
    let twist = Endo::new(vec![
        vec![int(0), x(3), int(0)],
        vec![int(0), int(0), int(0)],
        vec![int(0), int(0), x(1)],
    ]);
    assert!(!nijenhuis_torsion(&a, &twist, &a.frame(1), &a.frame(2)).is_zero());
}

#[test]
fn poisson_bracket_examples() {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    assert!(poisson_bracket(&a, &pi, &a.coframe(0), &a.coframe(1)).is_zero());
    let zero = GradedSection::zero(Variance::Multivector, 2, 2);
    assert!(poisson_bracket(&a, &zero, &a.coframe(0).scale(&x(2)), &a.coframe(1)).is_zero());
    let f = a.function(Variance::Form, &(&x(1) * &x(2)) + &x(2));
    let g = a.function(Variance::Form, &x(1) * &x(1));
    let (df, dg) = (a.differential(&f), a.differential(&g));
    let pb = a.function(Variance::Form, pi_pair(&pi, &df, &dg));
    assert_eq!(poisson_bracket(&a, &pi, &df, &dg), a.differential(&pb));
}

#[test]
fn twisted_bracket_reduces_to_poisson_bracket() {
    let (a, pi, _) = twisted_r4();
    let zero = GradedSection::zero(Variance::Form, 4, 3);
    let al = a.coframe(0).scale(&x(3));
    let be = a.coframe(2).add(&a.coframe(1).scale(&x(1)));
    assert_eq!(
        twisted_bracket(&a, &pi, Some(&zero), &al, &be),
        poisson_bracket(&a, &pi, &al, &be)
    );
    let nopi = GradedSection::zero(Variance::Multivector, 4, 2);
    let phi = a.coframe(0).wedge(&a.coframe(1)).wedge(&a.coframe(2));
    assert!(twisted_bracket(&a, &nopi, Some(&phi), &al, &be).is_zero());
    assert_eq!(dprime(&a, &nopi, &phi, &al).unwrap(), a.differential(&al));
}

#[test]
fn twisted_differential_on_functions() {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    let f = a.function(Variance::Multivector, x(1));
    let d = twisted_differential(&a, &pi, None, &f).unwrap();
    assert_eq!(d, a.frame(1).neg());
    let cot = cotangent_algebroid(&a, &pi, None).unwrap();
    assert_eq!(cot.differential(&f.flip()).flip(), d);
}

#[test]
fn twisted_formulas_match_presentations() {
    let (a, pi, phi) = twisted_r4();
    let cot = cotangent_algebroid(&a, &pi, Some(&phi)).unwrap();
    for i in 0..4 {
        let v = a.frame(i).scale(&x(2)).add(&a.frame(3));
        let formula = twisted_differential(&a, &pi, Some(&phi), &v).unwrap();
        assert_eq!(formula, cot.differential(&v.flip()).flip());
        let al = a.coframe(i).scale(&x(3));
        let lhs = dprime(&a, &pi, &phi, &al).unwrap();
        let rhs = a.differential(&al).sub(&pi_sharp(&pi, &al).insert_into(&phi));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn twisted_poisson_checks() {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    let zero3 = GradedSection::zero(Variance::Form, 2, 3);
    assert!(check_twisted_poisson(&a, &pi, &zero3).passed());

    // π♯ has rank two here, so π♯(dx1∧dx2∧dx3) vanishes.
    let b = tr(3);
    let pib = b.frame(0).wedge(&b.frame(1));
    assert!(pi_sharp(&pib, &vol(&b)).is_zero());
    assert!(check_twisted_poisson(&b, &pib, &vol(&b)).passed());

    let c = tr(4);
    let pic = c.frame(0).wedge(&c.frame(1)).add(&c.frame(2).wedge(&c.frame(3)));
    let rep = check_twisted_poisson(&c, &pic, &vol(&c));
    assert!(!rep.passed());
    assert!(rep.clause("closed").unwrap().pass);
    assert!(!rep.clause("twisted-poisson").unwrap().pass);

    let zero2 = GradedSection::zero(Variance::Multivector, 3, 2);
    assert!(check_twisted_poisson(&b, &zero2, &vol(&b)).passed());

    let (a4, pi4, phi4) = twisted_r4();
    assert!(check_twisted_poisson(&a4, &pi4, &phi4).passed());
    assert!(!check_twisted_poisson(&a4, &pi4, &phi4.neg()).passed());
    assert!(cotangent_algebroid(&a4, &pi4, Some(&phi4)).unwrap().check_axioms().passed());
}

#[test]
fn compatibility_examples() {
    let (a, pi, n, _) = e6();
    assert!(check_compatible(&a, &pi, &Endo::identity(2)).passed());
    // A rotation is never compatible with a rank-2 bivector: here Nπ♯ = Id.
    let rep = check_compatible(&a, &pi, &n);
    assert!(!rep.clause("n-pi-sharp(E1)").unwrap().pass);
    assert_eq!(n.compose(&pi_sharp_matrix(&pi)), Endo::identity(2));
    let (a4, pi4, n4, _) = pn4();
    assert!(check_compatible(&a4, &pi4, &n4).passed());
    let scalar = Endo::diagonal(vec![x(1); 4]);
    let rep = check_compatible(&a4, &pi4, &scalar);
    assert!(rep.clause("n-pi-bivector").unwrap().pass);
    assert!(!rep.clause("magri-morosi(E2,E3)").unwrap().pass);
    let d = Endo::diagonal(vec![x(1), x(2)]);
    let rep = check_compatible(&a, &pi, &d);
    assert!(!rep.passed());
    let c = rep.clause("n-pi-sharp(E1)").unwrap();
    assert!(!c.pass);
    assert_eq!(c.residue, "e2:-x1+x2");
    assert!(!rep.clause("n-pi-bivector").unwrap().pass);
}

#[test]
fn d_n_examples() {
    let a = tr(3);
    let mu = a.coframe(0).wedge(&a.coframe(2)).scale(&x(2));
    assert_eq!(d_n(&a, &Endo::identity(3), &mu), a.differential(&mu));
    let f = a.function(Variance::Form, x(1));
    assert_eq!(d_n(&a, &diag3(), &f), a.coframe(0).scale(&x(1)));
    assert!(d_n(&a, &Endo::zero(3), &mu).is_zero());
    // d_N is the differential of the deformed algebroid.
    let an = a.deformed_by(&diag3()).unwrap();
    assert_eq!(d_n(&a, &diag3(), &mu), an.differential(&mu));
}

#[test]
fn nstar_modes() {
    let a = tr(3);
    let psi = vol(&a);
    let prod = &(&x(1) * &x(2)) * &x(3);
    let sum = &(&x(1) + &x(2)) + &x(3);
    assert_eq!(nstar_pullback(&diag3(), &psi, NStarMode::Multiplicative), psi.scale(&prod));
    assert_eq!(nstar_pullback(&diag3(), &psi, NStarMode::Derivation), psi.scale(&sum));
    assert_eq!(nstar_pullback(&Endo::identity(3), &psi, NStarMode::Multiplicative), psi);
    assert_eq!(nstar_pullback(&Endo::identity(3), &psi, NStarMode::Derivation), psi.scale_int(3));
    assert!(nstar_pullback(&Endo::zero(3), &psi, NStarMode::Multiplicative).is_zero());
}

#[test]
fn pqn_examples() {
    let (a, pi, n, phi) = e3();
    assert!(check_pqn(&a, &pi, &n, &phi).passed());
    let (a, pi, n, phi) = pn4();
    assert!(check_pqn(&a, &pi, &n, &phi).passed());
    let (a, pi, n, phi) = e6();
    assert!(!check_pqn(&a, &pi, &n, &phi).passed());
    let d = Endo::diagonal(vec![x(1), x(2)]);
    let rep = check_pqn(&a, &pi, &d, &phi);
    assert!(!rep.passed());
    assert!(rep.failing().all(|c| c.name.starts_with("n-pi") || c.name.starts_with("magri")));
}

#[test]
fn lemma_on_tnstar() {
    let (a, pi, n, phi) = pn4();
    assert!(verify_lemma_tnstar(&a, &pi, &n, &phi).passed());
    let (a, pi, n, phi) = e6();
    assert_eq!(
        verify_lemma_tnstar(&a, &pi, &n, &phi).verdict,
        Verdict::HypothesisNotSatisfied
    );
    let (a3, pi3, n3, phi3) = e3();
    assert!(verify_lemma_tnstar(&a3, &pi3, &n3, &phi3).passed());
    let d = Endo::diagonal(vec![x(1), x(2)]);
    assert_eq!(
        verify_lemma_tnstar(&a, &pi, &d, &phi).verdict,
        Verdict::HypothesisNotSatisfied
    );
}

#[test]
fn qlb_from_closed_form() {
    let a = tr(3);
    let q = QuasiLieBialgebroid::from_closed3form(&a, &vol(&a)).unwrap();
    assert!(q.check(&FamilyParams::default()).passed());
    // Over a null base of rank 3 every 3-section is admissible.
    let shifted = QuasiLieBialgebroid::new(
        q.base.clone(),
        q.dual.clone(),
        q.x.add(&vol(&a).flip().scale(&x(1))),
    )
    .unwrap();
    assert!(shifted.check(&FamilyParams::default()).passed());
    let b = tr(4);
    let psi = vol(&b);
    let q4 = QuasiLieBialgebroid::from_closed3form(&b, &psi).unwrap();
    assert!(q4.check(&FamilyParams::default()).passed());
    let corrupted = QuasiLieBialgebroid::new(q4.base.clone(), q4.dual.clone(), q4.x.scale(&x(4))).unwrap();
    let rep = corrupted.check(&FamilyParams::default());
    assert!(!rep.clause("d-star-x").unwrap().pass);
    let nonclosed = b.coframe(0).wedge(&b.coframe(1)).wedge(&b.coframe(2)).scale(&x(4));
    assert!(matches!(
        QuasiLieBialgebroid::from_closed3form(&b, &nonclosed),
        Err(Error::HypothesisNotSatisfied(_))
    ));
}

#[test]
fn qlb_from_pqn() {
    let (a, pi, n, phi) = e3();
    let q = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap();
    assert!(q.check(&FamilyParams::default()).passed());
    let shifted = QuasiLieBialgebroid::new(
        q.base.clone(),
        q.dual.clone(),
        q.x.add(&vol(&a).flip().scale(&x(1))),
    )
    .unwrap();
    assert!(shifted.check(&FamilyParams::default()).passed());

    let (a, pi, n, phi) = pn4();
    let q = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &phi).unwrap();
    assert!(q.x.is_zero());
    assert!(q.check(&FamilyParams::default()).passed());
    let (a, pi, _, phi) = e6();
    let d = Endo::diagonal(vec![x(1), x(2)]);
    assert!(matches!(
        QuasiLieBialgebroid::from_pqn(&a, &pi, &d, &phi),
        Err(Error::HypothesisNotSatisfied(_))
    ));
}

#[test]
fn qlb_from_twisted_poisson() {
    let (a, pi, phi) = twisted_r4();
    let q = QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi).unwrap();
    assert!(q.check(&FamilyParams::default()).passed());
    let wrong_sign = QuasiLieBialgebroid::new(q.base.clone(), q.dual.clone(), q.x.neg()).unwrap();
    assert!(!wrong_sign.check(&FamilyParams::default()).passed());

    let (a2, pi2, _, zero) = e6();
    let tri = QuasiLieBialgebroid::from_twisted_poisson(&a2, &pi2, &zero).unwrap();
    assert!(tri.x.is_zero());
    assert!(tri.check(&FamilyParams::default()).passed());
    assert!(QuasiLieBialgebroid::from_twisted_poisson(&a, &pi, &phi.neg()).is_err());
}

#[test]
fn qlb_morphisms() {
    let (a, pi, n, _) = e3();
    let psi = vol(&a);
    let qa = QuasiLieBialgebroid::from_closed3form(&a, &psi).unwrap();
    let target_phi = nstar_pullback(&n, &psi, NStarMode::Multiplicative);
    let qb = QuasiLieBialgebroid::from_pqn(&a, &pi, &n, &target_phi).unwrap();
    let nstar = BundleMorphism::same_base(qa.base.clone(), qb.base.clone(), n.transpose().rows().to_vec()).unwrap();
    assert!(check_qlb_morphism(&nstar, &qa, &qb).unwrap().passed());

    let bad = QuasiLieBialgebroid::new(qb.base.clone(), qb.dual.clone(), psi.flip()).unwrap();
    let rep = check_qlb_morphism(&nstar, &qa, &bad).unwrap();
    assert!(!rep.passed());
    assert!(rep.failing().all(|c| c.name == "twist"));

    let id = BundleMorphism::identity(&qa.base);
    assert!(check_qlb_morphism(&id, &qa, &qa).unwrap().passed());
}

