//! Shared instances for unit tests.

use crate::calculus::{Algebroid, Endo, GradedSection, Variance};
use crate::coeff::{RationalFunction, Var};

type RF = RationalFunction;

pub(crate) fn x(i: usize) -> RF {
    RF::var(&format!("x{i}"))
}

pub(crate) fn int(k: i64) -> RF {
    RF::integer(k)
}

pub(crate) fn tr(n: usize) -> Algebroid {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Algebroid::tangent(names.iter().map(|s| Var::from(s.as_str())).collect())
}

pub(crate) fn aff1() -> Algebroid {
    Algebroid::lie_algebra(2, vec![(0, 1, 1, RF::one())]).unwrap()
}

pub(crate) fn diag3() -> Endo {
    Endo::diagonal(vec![x(1), x(2), x(3)])
}

pub(crate) fn rot() -> Endo {
    Endo::new(vec![vec![int(0), int(1)], vec![int(-1), int(0)]])
}

pub(crate) fn vol(a: &Algebroid) -> GradedSection {
    a.coframe(0).wedge(&a.coframe(1)).wedge(&a.coframe(2))
}

/// E3: the deformed tangent algebroid of R³ with N = diag(x1,x2,x3), π = 0,
/// φ = x1x2x3 dx1∧dx2∧dx3.
pub(crate) fn e3() -> (Algebroid, GradedSection, Endo, GradedSection) {
    let a = tr(3).deformed_by(&diag3()).unwrap();
    let phi = vol(&a).scale(&(&(&x(1) * &x(2)) * &x(3)));
    let pi = GradedSection::zero(Variance::Multivector, 3, 2);
    (a, pi, diag3(), phi)
}

/// E6: R² with π = ∂1∧∂2 and the constant rotation N.
pub(crate) fn e6() -> (Algebroid, GradedSection, Endo, GradedSection) {
    let a = tr(2);
    let pi = a.frame(0).wedge(&a.frame(1));
    (a, pi, rot(), GradedSection::zero(Variance::Form, 2, 3))
}

/// R⁴ with π = ∂1∧∂3 + ∂2∧∂4 and N = diag(x1,x2,x1,x2).
pub(crate) fn pn4() -> (Algebroid, GradedSection, Endo, GradedSection) {
    let a = tr(4);
    let pi = a.frame(0).wedge(&a.frame(2)).add(&a.frame(1).wedge(&a.frame(3)));
    let n = Endo::diagonal(vec![x(1), x(2), x(1), x(2)]);
    (a, pi, n, GradedSection::zero(Variance::Form, 4, 3))
}

/// A twisted Poisson structure on R⁴: π = ∂1∧∂2 + x1 ∂3∧∂4 and φ the
/// differential of its inverse 2-form.
pub(crate) fn twisted_r4() -> (Algebroid, GradedSection, GradedSection) {
    let a = tr(4);
    let pi = a.frame(0).wedge(&a.frame(1)).add(&a.frame(2).wedge(&a.frame(3)).scale(&x(1)));
    let omega = a
        .coframe(0)
        .wedge(&a.coframe(1))
        .add(&a.coframe(2).wedge(&a.coframe(3)).scale(&x(1).recip().unwrap()));
    let phi = a.differential(&omega);
    (a, pi, phi)
}
