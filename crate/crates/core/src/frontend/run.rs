use std::collections::HashMap;

use num_rational::BigRational;

use crate::calculus::{Algebroid, BundleMorphism, Endo, GradedSection, Variance};
use crate::coeff::RationalFunction;
use crate::courant::{
    build_morphism_graph, check_generalized_dirac, check_split_dirac, verify_courant_axioms, CourantDouble,
    GeneralizedDirac, SplitSubbundle, Submanifold,
};
use crate::error::Error;
use crate::paired::{build_deformed_double, check_generalized_complex, check_paired, check_torsion_blocks};
use crate::pn::qlb::{check_qlb_morphism, QuasiLieBialgebroid};
use crate::pn::{check_compatible, check_pqn, check_twisted_poisson, verify_lemma_tnstar};
use crate::report::{Clause, ClauseClass, FamilyParams, Report};

use super::{StructureFile, Task, Value};

type RF = RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: u32,
    /// The constant in C2, e∘e = κ ρ* d⟨e,e⟩.
    pub kappa: RF,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            samples: 3,
            max_degree: 2,
            kappa: RF::constant(BigRational::new(1.into(), 2.into())),
        }
    }
}

impl RunConfig {
    pub fn family(&self) -> FamilyParams {
        FamilyParams {
            seed: self.seed,
            samples: self.samples,
            max_degree: self.max_degree,
        }
    }
}

type Outcome = std::result::Result<Report, Error>;

struct Runner<'f> {
    file: &'f StructureFile,
    config: &'f RunConfig,
    qlbs: HashMap<String, QuasiLieBialgebroid>,
}

/// Runs the tasks of `file` in order. Failures inside a task become its
/// report; later tasks still run.
pub fn run(file: &StructureFile, config: &RunConfig) -> Vec<Report> {
    let mut runner = Runner {
        file,
        config,
        qlbs: HashMap::new(),
    };
    file.tasks()
        .map(|t| {
            let mut rep = runner.task(t).unwrap_or_else(|e| match e {
                Error::HypothesisNotSatisfied(m) => Report::hypothesis_failed(&t.name, Vec::new(), m),
                other => Report::error(&t.name, other.to_string()),
            });
            rep.task = t.name.clone();
            rep
        })
        .collect()
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Semantic(msg.into())
}

impl<'f> Runner<'f> {
    fn algebroid(&self, name: &str) -> Result<&'f Algebroid, Error> {
        self.file
            .algebroid(name)
            .ok_or_else(|| semantic(format!("`{name}` is not an algebroid")))
    }

    fn tensor_on(&self, name: &str, on: &str) -> Result<&'f GradedSection, Error> {
        match self.file.tensor(name) {
            Some((o, s)) if o == on => Ok(s),
            Some((o, _)) => Err(semantic(format!("`{name}` lives on `{o}`, not `{on}`"))),
            None => Err(semantic(format!("`{name}` is not a tensor"))),
        }
    }

    fn endo_on(&self, name: &str, on: &str) -> Result<&'f Endo, Error> {
        match self.file.endo(name) {
            Some((o, n)) if o == on => Ok(n),
            Some((o, _)) => Err(semantic(format!("`{name}` lives on `{o}`, not `{on}`"))),
            None => Err(semantic(format!("`{name}` is not an endomorphism"))),
        }
    }

    fn qlb(&self, name: &str) -> Result<&QuasiLieBialgebroid, Error> {
        self.qlbs
            .get(name)
            .ok_or_else(|| semantic(format!("`{name}` was not built")))
    }

    fn keyed_tensor(&self, t: &Task, key: &str, on: &str) -> Result<Option<&'f GradedSection>, Error> {
        match t.keyed(key) {
            Some(Value::Name(n)) => self.tensor_on(n, on).map(Some),
            Some(Value::List(_)) => Err(semantic(format!("`{key}` takes a single name"))),
            None => Ok(None),
        }
    }

    fn keyed_list(t: &Task, key: &str) -> Vec<String> {
        match t.keyed(key) {
            Some(Value::List(l)) => l.clone(),
            _ => Vec::new(),
        }
    }

    /// Reads a declared morphism between the bases of two built quasi-Lie
    /// bialgebroids, which must match its declared shapes.
    fn reseated(&self, name: &str, qa: &QuasiLieBialgebroid, qb: &QuasiLieBialgebroid) -> Result<BundleMorphism, Error> {
        let phi = self
            .file
            .morphism(name)
            .ok_or_else(|| semantic(format!("`{name}` is not a morphism")))?;
        if phi.source().coords() != qa.base.coords() || phi.target().coords() != qb.base.coords() {
            return Err(Error::MalformedMorphism(format!(
                "`{name}` does not sit over the bases of the given quasi-Lie bialgebroids"
            )));
        }
        BundleMorphism::new(
            qa.base.clone(),
            qb.base.clone(),
            phi.base_map().to_vec(),
            phi.matrix().to_vec(),
        )
    }

    /// The double named by the first argument: standard or twisted for an
    /// algebroid, the quasi-Lie bialgebroid double otherwise.
    fn double(&self, t: &Task) -> Result<CourantDouble, Error> {
        let subject = t.positional()[0];
        if let Some(q) = self.qlbs.get(subject) {
            return Ok(CourantDouble::qlb_double(q));
        }
        let a = self.algebroid(subject)?;
        match self.keyed_tensor(t, "twist", subject)? {
            Some(phi) => CourantDouble::twisted(a, phi),
            None => Ok(CourantDouble::standard(a)),
        }
    }

    fn task(&mut self, t: &Task) -> Outcome {
        let pos = t.positional();
        let params = self.config.family();
        match t.name.as_str() {
            "check-axioms" => {
                let a = self.algebroid(pos[0])?;
                let mut rep = a.check_axioms();
                rep.absorb("", &a.check_d_squared());
                Ok(rep)
            }
            "check-twisted-poisson" => {
                let a = self.algebroid(pos[0])?;
                Ok(check_twisted_poisson(
                    a,
                    self.tensor_on(pos[1], pos[0])?,
                    self.tensor_on(pos[2], pos[0])?,
                ))
            }
            "check-compatible" => {
                let a = self.algebroid(pos[0])?;
                Ok(check_compatible(a, self.tensor_on(pos[1], pos[0])?, self.endo_on(pos[2], pos[0])?))
            }
            "check-pqn" | "verify-lemma-tnstar" => {
                let a = self.algebroid(pos[0])?;
                let pi = self.tensor_on(pos[1], pos[0])?;
                let n = self.endo_on(pos[2], pos[0])?;
                let zero = GradedSection::zero(Variance::Form, a.rank(), 3);
                let phi = match pos.get(3) {
                    Some(name) => self.tensor_on(name, pos[0])?,
                    None => &zero,
                };
                Ok(if t.name == "check-pqn" {
                    check_pqn(a, pi, n, phi)
                } else {
                    verify_lemma_tnstar(a, pi, n, phi)
                })
            }
            "build-qlb" => self.build_qlb(t),
            "check-qlb" => Ok(self.qlb(pos[0])?.check(&params)),
            "check-qlb-morphism" => {
                let (qa, qb) = (self.qlb(pos[1])?, self.qlb(pos[2])?);
                check_qlb_morphism(&self.reseated(pos[0], qa, qb)?, qa, qb)
            }
            "build-morphism-graph" => {
                let (qa, qb) = (self.qlb(pos[1])?, self.qlb(pos[2])?);
                let (e, f) = build_morphism_graph(&self.reseated(pos[0], qa, qb)?, qa, qb)?;
                Ok(check_generalized_dirac(&e, &f))
            }
            "verify-courant" => Ok(verify_courant_axioms(&self.double(t)?, &params, &self.config.kappa)),
            "check-generalized-dirac" => {
                let e = self.double(t)?;
                let f = match t.keyed("graph") {
                    Some(Value::Name(pi)) => {
                        let on = self.file.tensor(pi).map(|(o, _)| o).unwrap_or_default();
                        let pi = self.tensor_on(pi, on)?;
                        if pi.rank() != e.rank() {
                            return Err(Error::ParentMismatch);
                        }
                        GeneralizedDirac::bivector_graph(pi)
                    }
                    _ => {
                        let vanishing = Self::keyed_list(t, "conormal");
                        let refs: Vec<&str> = vanishing.iter().map(String::as_str).collect();
                        GeneralizedDirac::tangent_conormal(e.coords(), &refs)?
                    }
                };
                Ok(check_generalized_dirac(&e, &f))
            }
            "check-split-dirac" => {
                let q = self.qlb(pos[0])?;
                let vanishing = Self::keyed_list(t, "support");
                let refs: Vec<&str> = vanishing.iter().map(String::as_str).collect();
                let support = Submanifold::coordinate_subspace(q.base.coords(), &refs)?;
                let mut l = Vec::new();
                for name in Self::keyed_list(t, "L") {
                    let (_, s) = self
                        .file
                        .tensor(&name)
                        .ok_or_else(|| semantic(format!("`{name}` is not a tensor")))?;
                    if s.degree() != 1 || s.rank() != q.rank() {
                        return Err(Error::DegreeMismatch(format!(
                            "`{name}` must be a degree-one section of rank {}",
                            q.rank()
                        )));
                    }
                    l.push(match s.variance() {
                        Variance::Multivector => s.clone(),
                        Variance::Form => s.flip(),
                    });
                }
                Ok(check_split_dirac(q, &SplitSubbundle::new(support, q.rank(), l)?))
            }
            "check-paired" | "check-gc" | "check-torsion-blocks" | "build-deformed-double" => {
                let (on, op) = self
                    .file
                    .paired(pos[0])
                    .ok_or_else(|| semantic(format!("`{}` is not a paired operator", pos[0])))?;
                let a = self.algebroid(on)?;
                let phi = self.keyed_tensor(t, "twist", on)?;
                Ok(match t.name.as_str() {
                    "check-paired" => check_paired(&op.blocks()),
                    "check-gc" => check_generalized_complex(op),
                    "check-torsion-blocks" => check_torsion_blocks(a, op, phi),
                    _ => build_deformed_double(a, op, phi, &params)?.1,
                })
            }
            other => Err(semantic(format!("unknown task `{other}`"))),
        }
    }

    /// (A*_π, d_N, φ) when N is given, (A*_π, d′, φ) for a twisted Poisson
    /// pair, (A*, d, φ) for a closed 3-form alone.
    fn build_qlb(&mut self, t: &Task) -> Outcome {
        let on = t.positional()[0];
        let a = self.algebroid(on)?;
        let r = a.rank();
        let pi = self.keyed_tensor(t, "pi", on)?.cloned();
        let phi = self
            .keyed_tensor(t, "phi", on)?
            .cloned()
            .unwrap_or_else(|| GradedSection::zero(Variance::Form, r, 3));
        let n = match t.keyed("N") {
            Some(Value::Name(n)) => Some(self.endo_on(n, on)?.clone()),
            _ => None,
        };
        let (hyp, built) = match (&n, &pi) {
            (Some(n), pi) => {
                let pi = pi.clone().unwrap_or_else(|| GradedSection::zero(Variance::Multivector, r, 2));
                (check_pqn(a, &pi, n, &phi), QuasiLieBialgebroid::from_pqn(a, &pi, n, &phi))
            }
            (None, Some(pi)) => (
                check_twisted_poisson(a, pi, &phi),
                QuasiLieBialgebroid::from_twisted_poisson(a, pi, &phi),
            ),
            (None, None) => {
                let dphi = a.differential(&phi);
                let clause = Clause::boolean("closed", ClauseClass::ProofTensorial, dphi.is_zero(), &dphi.to_string());
                (
                    Report::from_clauses("build-qlb", vec![clause]),
                    QuasiLieBialgebroid::from_closed3form(a, &phi),
                )
            }
        };
        if !hyp.passed() {
            let names: Vec<String> = hyp.failing().map(|c| c.name.clone()).collect();
            return Ok(Report::hypothesis_failed(
                "build-qlb",
                hyp.clauses,
                format!("hypotheses fail at {}", names.join(", ")),
            ));
        }
        let q = built?;
        let name = match t.keyed("as") {
            Some(Value::Name(n)) => n.clone(),
            _ => return Err(semantic("`build-qlb` needs `as=NAME`")),
        };
        self.qlbs.insert(name, q);
        let mut rep = Report::new("build-qlb");
        rep.absorb("", &hyp);
        Ok(rep)
    }
}
