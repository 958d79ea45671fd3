use crate::calculus::algebroid::vector_clause;
use crate::calculus::section::index_tuples;
use crate::calculus::{Algebroid, BundleMorphism, Endo, GradedSection, Variance};
use crate::coeff::RationalFunction;
use crate::error::{Error, Result};
use crate::family::random_section;
use crate::report::{Clause, ClauseClass, FamilyParams, Report};

use super::{check_pqn, check_twisted_poisson, cotangent_algebroid, primed_algebroid};

type RF = RationalFunction;

/// A Lie algebroid `base`, a degree-one derivation d_* of ∧base given as the
/// differential of the presentation `dual` (whose frame is the coframe of
/// `base`), and a 3-section `x` of base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiLieBialgebroid {
    pub base: Algebroid,
    pub dual: Algebroid,
    pub x: GradedSection,
}

impl QuasiLieBialgebroid {
    pub fn new(base: Algebroid, dual: Algebroid, x: GradedSection) -> Result<Self> {
        if base.rank() != dual.rank() || base.coords() != dual.coords() {
            return Err(Error::MalformedPresentation(
                "dual presentation must have the same rank and base".into(),
            ));
        }
        if x.variance() != Variance::Multivector || x.degree() != 3 || x.rank() != base.rank() {
            return Err(Error::DegreeMismatch("the twist must be a 3-section".into()));
        }
        Ok(QuasiLieBialgebroid { base, dual, x })
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    /// d_* on ∧base.
    pub fn d_star(&self, p: &GradedSection) -> GradedSection {
        self.dual.differential(&p.flip()).flip()
    }

    /// (A*, d_A, φ) with the null structure on A*.
    pub fn from_closed3form(a: &Algebroid, phi: &GradedSection) -> Result<Self> {
        let dphi = a.differential(phi);
        if !dphi.is_zero() {
            return Err(Error::HypothesisNotSatisfied(format!("d phi = {dphi} is not zero")));
        }
        let base = Algebroid::null(a.coords().to_vec(), a.rank());
        Self::new(base, a.clone(), phi.flip())
    }

    /// (A*_π, d_N, φ) for a Poisson quasi-Nijenhuis structure.
    pub fn from_pqn(a: &Algebroid, pi: &GradedSection, n: &Endo, phi: &GradedSection) -> Result<Self> {
        let rep = check_pqn(a, pi, n, phi);
        if !rep.passed() {
            let names: Vec<&str> = rep.failing().map(|c| c.name.as_str()).collect();
            return Err(Error::HypothesisNotSatisfied(format!("check-pqn fails at {}", names.join(", "))));
        }
        Self::new(cotangent_algebroid(a, pi, None)?, a.deformed_by(n)?, phi.flip())
    }

    /// (A*_{π,φ}, d′, φ) for a twisted Poisson structure.
    pub fn from_twisted_poisson(a: &Algebroid, pi: &GradedSection, phi: &GradedSection) -> Result<Self> {
        let rep = check_twisted_poisson(a, pi, phi);
        if !rep.passed() {
            let names: Vec<&str> = rep.failing().map(|c| c.name.as_str()).collect();
            return Err(Error::HypothesisNotSatisfied(format!(
                "check-twisted-poisson fails at {}",
                names.join(", ")
            )));
        }
        Self::new(cotangent_algebroid(a, pi, Some(phi))?, primed_algebroid(a, pi, phi)?, phi.flip())
    }

    fn generators(&self) -> Vec<(String, GradedSection)> {
        let b = &self.base;
        let mut out: Vec<(String, GradedSection)> = b
            .coords()
            .iter()
            .enumerate()
            .map(|(a, x)| (x.to_string(), b.function(Variance::Multivector, b.coordinate(a))))
            .collect();
        for i in 0..b.rank() {
            out.push((format!("e{}", i + 1), b.frame(i)));
        }
        out
    }

    /// d_*[P,Q] − [d_*P,Q] − (−1)^{p−1}[P,d_*Q].
    pub fn derivation_defect(&self, p: &GradedSection, q: &GradedSection) -> GradedSection {
        let b = &self.base;
        let t1 = b.schouten(&self.d_star(p), q);
        let lhs = if p.degree() + q.degree() == 0 {
            GradedSection::zero(Variance::Multivector, b.rank(), 0)
        } else {
            self.d_star(&b.schouten(p, q))
        };
        let t2 = b.schouten(p, &self.d_star(q));
        if p.degree() % 2 == 1 {
            lhs.sub(&t1).sub(&t2)
        } else {
            lhs.sub(&t1).add(&t2)
        }
    }

    pub fn check(&self, params: &FamilyParams) -> Report {
        let b = &self.base;
        let mut rep = Report::new("check-qlb");
        rep.absorb("base.", &b.check_axioms());
        rep.push(vector_clause(
            "d-star-x".into(),
            ClauseClass::ProofTensorial,
            &self.d_star(&self.x),
            "e",
        ));
        let gens = self.generators();
        for (name, g) in &gens {
            let dd = self.d_star(&self.d_star(g));
            let ad = b.schouten(&self.x, g);
            rep.push(vector_clause(
                format!("d-star-squared({name})"),
                ClauseClass::ProofGenerators,
                &dd.sub(&ad),
                "e",
            ));
        }
        for i in 0..gens.len() {
            for j in i..gens.len() {
                let (ni, gi) = &gens[i];
                let (nj, gj) = &gens[j];
                if gi.degree() == 1 && i == j {
                    continue;
                }
                rep.push(vector_clause(
                    format!("derivation({ni},{nj})"),
                    ClauseClass::ProofGenerators,
                    &self.derivation_defect(gi, gj),
                    "e",
                ));
            }
        }
        let mut rng = params.rng(1);
        for s in 0..params.samples {
            let p = random_section(&mut rng, Variance::Multivector, b.rank(), 1, b.coords(), params.max_degree);
            let q = random_section(&mut rng, Variance::Multivector, b.rank(), 1, b.coords(), params.max_degree);
            rep.push(vector_clause(
                format!("derivation(sample{})", s + 1),
                ClauseClass::EvidenceSampled,
                &self.derivation_defect(&p, &q),
                "e",
            ));
        }
        rep.with_family(params.clone())
    }
}

/// The four compatibility clauses for Φ: Q_A.base → Q_B.base.
pub fn check_qlb_morphism(
    phi: &BundleMorphism,
    qa: &QuasiLieBialgebroid,
    qb: &QuasiLieBialgebroid,
) -> Result<Report> {
    if phi.source() != &qa.base || phi.target() != &qb.base {
        return Err(Error::MalformedMorphism(
            "morphism must map the first quasi-Lie bialgebroid to the second".into(),
        ));
    }
    let mut rep = Report::new("check-qlb-morphism");
    rep.absorb("lie-morphism.", &phi.is_lie_algebroid_morphism());

    let rb = qb.rank();
    let pull = |k: usize| phi.pullback(&qb.base.coframe(k));
    for t in index_tuples(rb, 2) {
        let (i, j) = (t[0], t[1]);
        let lhs = qa.dual.bracket(&pull(i).flip(), &pull(j).flip()).flip();
        let br = qb.dual.bracket(&qb.dual.frame(i), &qb.dual.frame(j)).flip();
        let rhs = phi.pullback(&br);
        rep.push(vector_clause(
            format!("dual-bracket(E{},E{})", i + 1, j + 1),
            ClauseClass::ProofTensorial,
            &lhs.sub(&rhs),
            "E",
        ));
    }
    for k in 0..rb {
        let v = qa.dual.anchor_of(&pull(k).flip());
        let target_anchor = qb.dual.anchor_of(&qb.dual.frame(k));
        let residues: Vec<(String, RF)> = qb
            .base
            .coords()
            .iter()
            .enumerate()
            .map(|(bi, y)| {
                let fb = &phi.base_map()[bi];
                let lhs: RF = qa
                    .base
                    .coords()
                    .iter()
                    .zip(&v)
                    .map(|(x, va)| va * &fb.differentiate(x))
                    .sum();
                let rhs = phi.pull_function(&target_anchor[bi]);
                (format!("d{y}"), &lhs - &rhs)
            })
            .collect();
        rep.push(Clause::components(
            format!("dual-anchor(E{})", k + 1),
            ClauseClass::ProofTensorial,
            residues.iter().map(|(l, r)| (l.clone(), r)),
        ));
    }
    let lhs = phi.push_multivector(&qa.x);
    let rhs = qb.x.map(|c| phi.pull_function(c));
    rep.push(vector_clause("twist".into(), ClauseClass::ProofTensorial, &lhs.sub(&rhs), "e"));
    Ok(rep)
}
