//! Verification reports: one clause per checked identity.

use std::fmt;

use crate::coeff::RationalFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseClass {
    /// Tensorial identity checked on all frame tuples.
    ProofTensorial,
    /// Derivation identity checked on generators.
    ProofGenerators,
    /// Identity checked on a finite family of sections.
    EvidenceSampled,
}

impl fmt::Display for ClauseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClauseClass::ProofTensorial => "PROOF_TENSORIAL",
            ClauseClass::ProofGenerators => "PROOF_GENERATORS",
            ClauseClass::EvidenceSampled => "EVIDENCE_SAMPLED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotSatisfied,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotSatisfied => "hypothesis-not-satisfied",
            Verdict::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub class: ClauseClass,
    /// Serialized residue, `"0"` when the identity holds.
    pub residue: String,
    pub pass: bool,
}

impl Clause {
    /// A clause whose residue is a scalar.
    pub fn scalar(name: impl Into<String>, class: ClauseClass, residue: &RationalFunction) -> Self {
        Clause {
            name: name.into(),
            class,
            residue: residue.to_string(),
            pass: residue.is_zero(),
        }
    }

    /// A clause whose residue is a list of scalars; zeros are dropped.
    pub fn components<'a>(
        name: impl Into<String>,
        class: ClauseClass,
        residues: impl IntoIterator<Item = (String, &'a RationalFunction)>,
    ) -> Self {
        let parts: Vec<String> = residues
            .into_iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(label, r)| format!("{label}:{r}"))
            .collect();
        Clause {
            name: name.into(),
            class,
            pass: parts.is_empty(),
            residue: if parts.is_empty() { "0".into() } else { parts.join(";") },
        }
    }

    /// A yes/no clause; `detail` becomes the residue on failure.
    pub fn boolean(name: impl Into<String>, class: ClauseClass, ok: bool, detail: &str) -> Self {
        Clause {
            name: name.into(),
            class,
            residue: if ok { "0".into() } else { detail.replace(' ', "_") },
            pass: ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub seed: u64,
    pub samples: usize,
    pub max_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub task: String,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
    pub family: Option<FamilyParams>,
    pub message: Option<String>,
}

impl Report {
    pub fn new(task: impl Into<String>) -> Self {
        Report {
            task: task.into(),
            verdict: Verdict::Pass,
            clauses: Vec::new(),
            family: None,
            message: None,
        }
    }

    pub fn from_clauses(task: impl Into<String>, clauses: Vec<Clause>) -> Self {
        let mut r = Report::new(task);
        r.clauses = clauses;
        r.settle();
        r
    }

    pub fn error(task: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(task);
        r.verdict = Verdict::Error;
        r.message = Some(message.into());
        r
    }

    pub fn hypothesis_failed(task: impl Into<String>, clauses: Vec<Clause>, message: impl Into<String>) -> Self {
        let mut r = Report::new(task);
        r.clauses = clauses;
        r.verdict = Verdict::HypothesisNotSatisfied;
        r.message = Some(message.into());
        r
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
        self.settle();
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        self.clauses.extend(clauses);
        self.settle();
    }

    /// Appends the clauses of `other` with names prefixed by `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: &Report) {
        for c in &other.clauses {
            let mut c = c.clone();
            c.name = format!("{prefix}{}", c.name);
            self.clauses.push(c);
        }
        if other.family.is_some() {
            self.family = other.family.clone();
        }
        self.settle();
    }

    pub fn with_family(mut self, family: FamilyParams) -> Self {
        self.family = Some(family);
        self
    }

    fn settle(&mut self) {
        if matches!(self.verdict, Verdict::Pass | Verdict::Fail) {
            self.verdict = if self.clauses.iter().all(|c| c.pass) {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.pass)
    }

    /// One line per clause in the `records` format.
    pub fn records(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                format!(
                    "task={} clause={} class={} residue={} verdict={}",
                    self.task,
                    c.name,
                    c.class,
                    c.residue,
                    if c.pass { "pass" } else { "fail" }
                )
            })
            .collect();
        if matches!(self.verdict, Verdict::Error | Verdict::HypothesisNotSatisfied) {
            let msg = self.message.clone().unwrap_or_default();
            out.push(format!(
                "task={} clause={} class=PROOF_TENSORIAL residue={} verdict=fail",
                self.task,
                self.verdict,
                msg.replace(' ', "_"),
            ));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.task, self.verdict)?;
        if let Some(m) = &self.message {
            writeln!(f, "  {m}")?;
        }
        if let Some(p) = &self.family {
            writeln!(f, "  family: seed={} samples={} max-degree={}", p.seed, p.samples, p.max_degree)?;
        }
        let total = self.clauses.len();
        let failed: Vec<&Clause> = self.failing().collect();
        writeln!(f, "  {} of {} clauses pass", total - failed.len(), total)?;
        for c in failed.iter().take(20) {
            writeln!(f, "  FAIL {} [{}] residue {}", c.name, c.class, c.residue)?;
        }
        if failed.len() > 20 {
            writeln!(f, "  ... {} more failing clauses", failed.len() - 20)?;
        }
        Ok(())
    }
}
