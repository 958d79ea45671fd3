//! Bivectors, Nijenhuis tensors and 3-forms on a Lie algebroid.

pub mod qlb;

use crate::calculus::algebroid::vector_clause;
use crate::calculus::section::index_tuples;
use crate::calculus::{Algebroid, Endo, GradedSection, Variance};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::report::{Clause, ClauseClass, Report};

pub use qlb::QuasiLieBialgebroid;

type RF = RationalFunction;

/// How N acts on a k-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NStarMode {
    /// (N*ψ)(X1,…,Xk) = ψ(NX1,…,NXk).
    Multiplicative,
    /// (i_Nψ)(X1,…,Xk) = Σ_j ψ(X1,…,NXj,…,Xk).
    Derivation,
}

pub fn nstar_pullback(n: &Endo, psi: &GradedSection, mode: NStarMode) -> GradedSection {
    assert_eq!(psi.variance(), Variance::Form);
    match mode {
        NStarMode::Multiplicative => n.apply_wedge(psi),
        NStarMode::Derivation => n.apply_derivation(psi),
    }
}

/// π♯α = i_α π on 1-forms, extended so that
/// ⟨π♯μ, α1∧…∧αk⟩ = (−1)^k μ(π♯α1,…,π♯αk). The two signs cancel against
/// the transpose, so the extension is ∧^k of π♯ on 1-forms.
pub fn pi_sharp(pi: &GradedSection, mu: &GradedSection) -> GradedSection {
    assert_eq!(pi.variance(), Variance::Multivector);
    assert_eq!(pi.degree(), 2);
    assert_eq!(mu.variance(), Variance::Form);
    let r = pi.rank();
    let images: Vec<GradedSection> = (0..r)
        .map(|j| GradedSection::basis(Variance::Form, r, &[j]).insert_into(pi))
        .collect();
    let mut out = GradedSection::zero(Variance::Multivector, r, mu.degree());
    for (idx, c) in mu.terms() {
        let mut w = GradedSection::scalar(Variance::Multivector, r, c.clone());
        for &j in idx {
            w = w.wedge(&images[j]);
        }
        out = out.add(&w);
    }
    out
}

/// The r×r matrix of π♯ in the frame: column j is π♯ε^j.
pub fn pi_sharp_matrix(pi: &GradedSection) -> Endo {
    let r = pi.rank();
    Endo::new(
        (0..r)
            .map(|i| (0..r).map(|j| pi.component(&[j, i])).collect())
            .collect(),
    )
}

/// The bivector with (Nπ)♯ = N∘π♯, or an error if N∘π♯ is not skew.
pub fn n_pi(n: &Endo, pi: &GradedSection) -> Result<GradedSection> {
    let m = n.compose(&pi_sharp_matrix(pi));
    let r = pi.rank();
    for i in 0..r {
        for j in 0..r {
            if *m.entry(i, j) != -m.entry(j, i) {
                return Err(Error::HypothesisNotSatisfied(format!(
                    "N pi is not a bivector at ({},{})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    // (Nπ)^{ji} = ⟨ε^i, (Nπ)♯ε^j⟩ = m[i][j]
    Ok(GradedSection::from_fn(Variance::Multivector, r, 2, |idx| {
        m.entry(idx[1], idx[0]).clone()
    }))
}

/// [X,Y]_N = [NX,Y] + [X,NY] − N[X,Y].
pub fn deformed_bracket(a: &Algebroid, n: &Endo, x: &GradedSection, y: &GradedSection) -> GradedSection {
    a.deformed_bracket(n, x, y)
}

/// T_N(X,Y) = [NX,NY] − N[X,Y]_N.
pub fn nijenhuis_torsion(a: &Algebroid, n: &Endo, x: &GradedSection, y: &GradedSection) -> GradedSection {
    a.bracket(&n.apply(x), &n.apply(y))
        .sub(&n.apply(&a.deformed_bracket(n, x, y)))
}

/// π(α, β) = ⟨α∧β, π⟩.
pub fn pi_pair(pi: &GradedSection, alpha: &GradedSection, beta: &GradedSection) -> RF {
    alpha.wedge(beta).pairing(pi)
}

/// [α,β]^φ_π = L_{π♯α}β − L_{π♯β}α − d(π(α,β)) + φ(π♯α, π♯β, −).
pub fn twisted_bracket(
    a: &Algebroid,
    pi: &GradedSection,
    phi: Option<&GradedSection>,
    alpha: &GradedSection,
    beta: &GradedSection,
) -> GradedSection {
    let pa = pi_sharp(pi, alpha);
    let pb = pi_sharp(pi, beta);
    let mut out = a
        .lie_derivative(&pa, beta)
        .sub(&a.lie_derivative(&pb, alpha))
        .sub(&a.differential(&a.function(Variance::Form, pi_pair(pi, alpha, beta))));
    if let Some(phi) = phi {
        out = out.add(&pa.wedge(&pb).insert_into(phi));
    }
    out
}

pub fn poisson_bracket(a: &Algebroid, pi: &GradedSection, alpha: &GradedSection, beta: &GradedSection) -> GradedSection {
    twisted_bracket(a, pi, None, alpha, beta)
}

/// The presentation of A*_{π,φ}: frame ε^i, anchor ρ∘π♯, bracket [·,·]^φ_π.
pub fn cotangent_algebroid(a: &Algebroid, pi: &GradedSection, phi: Option<&GradedSection>) -> Result<Algebroid> {
    let r = a.rank();
    let anchor = (0..r)
        .map(|i| a.anchor_of(&pi_sharp(pi, &a.coframe(i))))
        .collect();
    let mut c = vec![vec![vec![RF::zero(); r]; r]; r];
    for t in index_tuples(r, 2) {
        let (i, j) = (t[0], t[1]);
        let b = twisted_bracket(a, pi, phi, &a.coframe(i), &a.coframe(j));
        for k in 0..r {
            c[i][j][k] = b.get(&[k]);
            c[j][i][k] = -b.get(&[k]);
        }
    }
    Algebroid::new(a.coords().to_vec(), anchor, c)
}

/// The presentation of A with [X,Y]′ = [X,Y] − π♯(φ(X,Y,−)) and anchor ρ.
pub fn primed_algebroid(a: &Algebroid, pi: &GradedSection, phi: &GradedSection) -> Result<Algebroid> {
    let r = a.rank();
    let mut c = vec![vec![vec![RF::zero(); r]; r]; r];
    for t in index_tuples(r, 2) {
        let (i, j) = (t[0], t[1]);
        let (x, y) = (a.frame(i), a.frame(j));
        let b = a
            .bracket(&x, &y)
            .sub(&pi_sharp(pi, &x.wedge(&y).insert_into(phi)));
        for k in 0..r {
            c[i][j][k] = b.get(&[k]);
            c[j][i][k] = -b.get(&[k]);
        }
    }
    Algebroid::new(a.coords().to_vec(), a.anchor_matrix().to_vec(), c)
}

/// d^φ_π on ∧A: [π, f] on functions, [π,X] − π♯(i_Xφ) on sections, and the
/// derivation extension (the differential of A*_{π,φ}) in higher degree.
pub fn twisted_differential(
    a: &Algebroid,
    pi: &GradedSection,
    phi: Option<&GradedSection>,
    x: &GradedSection,
) -> Result<GradedSection> {
    match x.degree() {
        0 => Ok(a.schouten(pi, x)),
        1 => {
            let mut out = a.schouten(pi, x);
            if let Some(phi) = phi {
                out = out.sub(&pi_sharp(pi, &x.insert_into(phi)));
            }
            Ok(out)
        }
        _ => {
            let dual = cotangent_algebroid(a, pi, phi)?;
            Ok(dual.differential(&x.flip()).flip())
        }
    }
}

/// d′ = the differential of the primed bracket; d′f = df and
/// d′α = dα − i_{π♯α}φ.
pub fn dprime(a: &Algebroid, pi: &GradedSection, phi: &GradedSection, mu: &GradedSection) -> Result<GradedSection> {
    Ok(primed_algebroid(a, pi, phi)?.differential(mu))
}

/// d_N = i_N∘d − d∘i_N with i_N the derivation extension of N*.
pub fn d_n(a: &Algebroid, n: &Endo, mu: &GradedSection) -> GradedSection {
    let lhs = n.apply_derivation(&a.differential(mu));
    let rhs = a.differential(&n.apply_derivation(mu));
    lhs.sub(&rhs)
}

fn bivector_residue(name: &str, v: &GradedSection, class: ClauseClass) -> Clause {
    vector_clause(name.to_string(), class, v, "e")
}

/// dφ = 0 and [π,π] = 2π♯φ.
pub fn check_twisted_poisson(a: &Algebroid, pi: &GradedSection, phi: &GradedSection) -> Report {
    let closed = vector_clause("closed".into(), ClauseClass::ProofTensorial, &a.differential(phi), "E");
    let lhs = a.schouten(pi, pi);
    let rhs = pi_sharp(pi, phi).scale_int(2);
    let eq = bivector_residue("twisted-poisson", &lhs.sub(&rhs), ClauseClass::ProofTensorial);
    Report::from_clauses("check-twisted-poisson", vec![closed, eq])
}

/// C(π,N)(α,β) = [α,β]_{Nπ} − [α,β]^{N*}_π, where the second bracket is
/// [·,·]_π deformed along N*.
pub fn magri_morosi(
    a: &Algebroid,
    pi: &GradedSection,
    n: &Endo,
    alpha: &GradedSection,
    beta: &GradedSection,
) -> Result<GradedSection> {
    let npi = n_pi(n, pi)?;
    let first = poisson_bracket(a, &npi, alpha, beta);
    let second = poisson_bracket(a, pi, &n.apply(alpha), beta)
        .add(&poisson_bracket(a, pi, alpha, &n.apply(beta)))
        .sub(&n.apply(&poisson_bracket(a, pi, alpha, beta)));
    Ok(first.sub(&second))
}

/// Nπ♯ = π♯N* and C(π,N) = 0 on coframe pairs.
pub fn check_compatible(a: &Algebroid, pi: &GradedSection, n: &Endo) -> Report {
    let r = a.rank();
    let mut clauses = Vec::new();
    for i in 0..r {
        let e = a.coframe(i);
        let lhs = n.apply(&pi_sharp(pi, &e));
        let rhs = pi_sharp(pi, &n.apply(&e));
        clauses.push(vector_clause(
            format!("n-pi-sharp(E{})", i + 1),
            ClauseClass::ProofTensorial,
            &lhs.sub(&rhs),
            "e",
        ));
    }
    match n_pi(n, pi) {
        Err(e) => clauses.push(Clause::boolean(
            "n-pi-bivector",
            ClauseClass::ProofTensorial,
            false,
            &e.to_string(),
        )),
        Ok(_) => {
            clauses.push(Clause::boolean("n-pi-bivector", ClauseClass::ProofTensorial, true, ""));
            for t in index_tuples(r, 2) {
                let c = magri_morosi(a, pi, n, &a.coframe(t[0]), &a.coframe(t[1])).expect("checked");
                clauses.push(vector_clause(
                    format!("magri-morosi(E{},E{})", t[0] + 1, t[1] + 1),
                    ClauseClass::ProofTensorial,
                    &c,
                    "E",
                ));
            }
        }
    }
    Report::from_clauses("check-compatible", clauses)
}

/// All clauses of a Poisson quasi-Nijenhuis structure.
pub fn check_pqn(a: &Algebroid, pi: &GradedSection, n: &Endo, phi: &GradedSection) -> Report {
    let mut rep = Report::new("check-pqn");
    rep.push(bivector_residue("poisson", &a.schouten(pi, pi), ClauseClass::ProofTensorial));
    rep.absorb("", &check_compatible(a, pi, n));
    rep.push(vector_clause("closed".into(), ClauseClass::ProofTensorial, &a.differential(phi), "E"));
    let inphi = n.apply_derivation(phi);
    rep.push(vector_clause(
        "closed-i-n-phi".into(),
        ClauseClass::ProofTensorial,
        &a.differential(&inphi),
        "E",
    ));
    for t in index_tuples(a.rank(), 2) {
        let (x, y) = (a.frame(t[0]), a.frame(t[1]));
        let lhs = nijenhuis_torsion(a, n, &x, &y);
        let rhs = pi_sharp(pi, &x.wedge(&y).insert_into(phi));
        rep.push(vector_clause(
            format!("torsion(e{},e{})", t[0] + 1, t[1] + 1),
            ClauseClass::ProofTensorial,
            &lhs.add(&rhs),
            "e",
        ));
    }
    rep
}

/// ⟨T_{N*}(α,β), X⟩ = φ(π♯α, π♯β, X) on frame triples, with T_{N*} the
/// torsion of N* for [·,·]_π.
pub fn verify_lemma_tnstar(a: &Algebroid, pi: &GradedSection, n: &Endo, phi: &GradedSection) -> Report {
    let pqn = check_pqn(a, pi, n, phi);
    if !pqn.passed() {
        return Report::hypothesis_failed(
            "verify-lemma-tnstar",
            pqn.failing().cloned().collect(),
            "check-pqn fails",
        );
    }
    let r = a.rank();
    let br = |x: &GradedSection, y: &GradedSection| poisson_bracket(a, pi, x, y);
    let mut clauses = Vec::new();
    for t in index_tuples(r, 2) {
        let (al, be) = (a.coframe(t[0]), a.coframe(t[1]));
        let (na, nb) = (n.apply(&al), n.apply(&be));
        let deformed = br(&na, &be).add(&br(&al, &nb)).sub(&n.apply(&br(&al, &be)));
        let torsion = br(&na, &nb).sub(&n.apply(&deformed));
        let pa = pi_sharp(pi, &al);
        let pb = pi_sharp(pi, &be);
        let rhs = pa.wedge(&pb).insert_into(phi);
        clauses.push(vector_clause(
            format!("tnstar(E{},E{})", t[0] + 1, t[1] + 1),
            ClauseClass::ProofTensorial,
            &torsion.sub(&rhs),
            "E",
        ));
    }
    Report::from_clauses("verify-lemma-tnstar", clauses)
}

#[cfg(test)]
mod tests;
