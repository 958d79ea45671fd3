//! Paired operators 𝒩 = (N π; σ −N*) on A ⊕ A* and the deformed doubles
//! they induce.

use crate::calculus::section::index_tuples;
use crate::calculus::{Algebroid, Endo, GradedSection, Variance};
use crate::coeff::RationalFunction;
use crate::courant::{CourantDouble, CourantFamily, DoubleSection};
use crate::error::{Error, Result};
use crate::pn::qlb::QuasiLieBialgebroid;
use crate::pn::{check_pqn, cotangent_algebroid, n_pi, nijenhuis_torsion, pi_sharp, pi_sharp_matrix, poisson_bracket};
use crate::report::{Clause, ClauseClass, FamilyParams, Report};

type RF = RationalFunction;

/// A bundle map of A ⊕ A* as a 2r×2r matrix acting on coefficient columns
/// (e_1..e_r, E_1..E_r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOperator {
    m: Vec<Vec<RF>>,
}

impl BlockOperator {
    pub fn new(m: Vec<Vec<RF>>) -> Result<Self> {
        let n = m.len();
        if n == 0 || n % 2 != 0 || m.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedPresentation("block operator must be 2r x 2r".into()));
        }
        Ok(BlockOperator { m })
    }

    pub fn rank(&self) -> usize {
        self.m.len() / 2
    }

    pub fn entry(&self, i: usize, j: usize) -> &RF {
        &self.m[i][j]
    }

    pub fn apply(&self, e: &DoubleSection) -> Result<DoubleSection> {
        if e.rank() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        let c = e.coefficients();
        let out: Vec<RF> = self
            .m
            .iter()
            .map(|row| row.iter().zip(&c).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect();
        Ok(DoubleSection::from_coefficients(self.rank(), &out))
    }

    pub fn compose(&self, other: &BlockOperator) -> BlockOperator {
        let n = self.m.len();
        let m = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.m[i][k] * &other.m[k][j]).sum()).collect())
            .collect();
        BlockOperator { m }
    }
}

/// ⟨b_i, 𝒩 b_j⟩ + ⟨𝒩 b_i, b_j⟩ on frame pairs.
pub fn check_paired(op: &BlockOperator) -> Report {
    let r = op.rank();
    let swap = |i: usize| if i < r { i + r } else { i - r };
    let label = |i: usize| if i < r { format!("e{}", i + 1) } else { format!("E{}", i - r + 1) };
    let mut clauses = Vec::new();
    for i in 0..2 * r {
        for j in i..2 * r {
            let v = op.entry(swap(i), j) + op.entry(swap(j), i);
            clauses.push(Clause::scalar(
                format!("paired({},{})", label(i), label(j)),
                ClauseClass::ProofTensorial,
                &v,
            ));
        }
    }
    Report::from_clauses("check-paired", clauses)
}

/// 𝒩(X+α) = (NX + π♯α) + (i_Xσ − N*α).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedOperator {
    n: Endo,
    pi: GradedSection,
    sigma: GradedSection,
}

impl PairedOperator {
    pub fn new(n: Endo, pi: GradedSection, sigma: GradedSection) -> Result<Self> {
        let r = n.rank();
        if pi.variance() != Variance::Multivector || pi.degree() != 2 || pi.rank() != r {
            return Err(Error::DegreeMismatch("pi must be a bivector of the same rank as N".into()));
        }
        if sigma.variance() != Variance::Form || sigma.degree() != 2 || sigma.rank() != r {
            return Err(Error::DegreeMismatch("sigma must be a 2-form of the same rank as N".into()));
        }
        Ok(PairedOperator { n, pi, sigma })
    }

    /// Reads the blocks back from a matrix, if it is paired.
    pub fn from_blocks(op: &BlockOperator) -> Result<Self> {
        let rep = check_paired(op);
        if !rep.passed() {
            let names: Vec<&str> = rep.failing().map(|c| c.name.as_str()).collect();
            return Err(Error::HypothesisNotSatisfied(format!("not paired at {}", names.join(", "))));
        }
        let r = op.rank();
        let n = Endo::new((0..r).map(|i| (0..r).map(|j| op.entry(i, j).clone()).collect()).collect());
        let pi = GradedSection::from_fn(Variance::Multivector, r, 2, |k| op.entry(k[1], r + k[0]).clone());
        let sigma = GradedSection::from_fn(Variance::Form, r, 2, |k| op.entry(r + k[1], k[0]).clone());
        Self::new(n, pi, sigma)
    }

    pub fn rank(&self) -> usize {
        self.n.rank()
    }

    pub fn n(&self) -> &Endo {
        &self.n
    }

    pub fn pi(&self) -> &GradedSection {
        &self.pi
    }

    pub fn sigma(&self) -> &GradedSection {
        &self.sigma
    }

    /// σ♭ in the frame: column j is i_{e_j}σ.
    fn sigma_flat(&self) -> Endo {
        let r = self.rank();
        Endo::new((0..r).map(|i| (0..r).map(|j| self.sigma.component(&[j, i])).collect()).collect())
    }

    pub fn blocks(&self) -> BlockOperator {
        let r = self.rank();
        let p = pi_sharp_matrix(&self.pi);
        let s = self.sigma_flat();
        let mut m = vec![vec![RF::zero(); 2 * r]; 2 * r];
        for i in 0..r {
            for j in 0..r {
                m[i][j] = self.n.entry(i, j).clone();
                m[i][r + j] = p.entry(i, j).clone();
                m[r + i][j] = s.entry(i, j).clone();
                m[r + i][r + j] = -self.n.entry(j, i);
            }
        }
        BlockOperator { m }
    }

    pub fn apply(&self, e: &DoubleSection) -> Result<DoubleSection> {
        if e.rank() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        let vector = self.n.apply(&e.vector).add(&pi_sharp(&self.pi, &e.form));
        let form = e.vector.insert_into(&self.sigma).sub(&self.n.apply(&e.form));
        Ok(DoubleSection::new(vector, form))
    }
}

/// The double a paired operator deforms: standard(A), or twisted(A, φ).
pub fn undeformed_double(a: &Algebroid, phi: Option<&GradedSection>) -> Result<CourantDouble> {
    match phi {
        None => Ok(CourantDouble::standard(a)),
        Some(phi) => CourantDouble::twisted(a, phi),
    }
}

/// ⟦𝒩e₁,e₂⟧ + ⟦e₁,𝒩e₂⟧ − 𝒩⟦e₁,e₂⟧.
pub fn deformed_courant_bracket(
    e: &CourantDouble,
    op: &PairedOperator,
    e1: &DoubleSection,
    e2: &DoubleSection,
) -> Result<DoubleSection> {
    if op.rank() != e.rank() {
        return Err(Error::ParentMismatch);
    }
    Ok(e
        .skew_bracket(&op.apply(e1)?, e2)?
        .add(&e.skew_bracket(e1, &op.apply(e2)?)?)
        .sub(&op.apply(&e.skew_bracket(e1, e2)?)?))
}

/// T_𝒩(e₁,e₂) = ⟦𝒩e₁,𝒩e₂⟧ − 𝒩⟦e₁,e₂⟧_𝒩.
pub fn courant_nijenhuis_torsion(
    e: &CourantDouble,
    op: &PairedOperator,
    e1: &DoubleSection,
    e2: &DoubleSection,
) -> Result<DoubleSection> {
    let lhs = e.skew_bracket(&op.apply(e1)?, &op.apply(e2)?)?;
    Ok(lhs.sub(&op.apply(&deformed_courant_bracket(e, op, e1, e2)?)?))
}

fn section_clause(name: String, class: ClauseClass, s: &DoubleSection) -> Clause {
    let parts = s.residue_parts();
    Clause::components(name, class, parts.iter().map(|(l, c)| (l.clone(), c)))
}

fn vector_clause(name: String, v: &GradedSection) -> Clause {
    let letter = match v.variance() {
        Variance::Multivector => "e",
        Variance::Form => "E",
    };
    let parts: Vec<(String, RF)> = v
        .terms()
        .map(|(k, c)| {
            let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
            (format!("{letter}{}", idx.join("")), c.clone())
        })
        .collect();
    let parts = if v.degree() == 0 { vec![("1".to_string(), v.scalar_value())] } else { parts };
    Clause::components(name, ClauseClass::ProofTensorial, parts.iter().map(|(l, c)| (l.clone(), c)))
}

/// φ(X, Y, −).
fn contract2(phi: &GradedSection, x: &GradedSection, y: &GradedSection) -> GradedSection {
    y.insert_into(&x.insert_into(phi))
}

/// Nσ(X, Y) = σ(NX, Y).
fn n_sigma(n: &Endo, sigma: &GradedSection) -> GradedSection {
    let r = n.rank();
    GradedSection::from_fn(Variance::Form, r, 2, |k| {
        let x = n.apply(&GradedSection::basis(Variance::Multivector, r, &[k[0]]));
        let y = GradedSection::basis(Variance::Multivector, r, &[k[1]]);
        sigma.evaluate(&[&x, &y])
    })
}

/// T_𝒩 on frame covector pairs and frame vector pairs, together with the
/// equivalent block equations.
pub fn check_torsion_blocks(a: &Algebroid, op: &PairedOperator, phi: Option<&GradedSection>) -> Report {
    let task = "check-torsion-blocks";
    let e = match undeformed_double(a, phi) {
        Ok(e) => e,
        Err(err) => return Report::error(task, err.to_string()),
    };
    if op.rank() != a.rank() {
        return Report::error(task, Error::ParentMismatch.to_string());
    }
    let r = a.rank();
    let (n, pi, sigma) = (op.n(), op.pi(), op.sigma());
    let zero3 = GradedSection::zero(Variance::Form, r, 3);
    let phi = phi.unwrap_or(&zero3);
    let pairs = index_tuples(r, 2);

    let mut direct = Vec::new();
    for t in &pairs {
        let (i, j) = (t[0], t[1]);
        let alpha = DoubleSection::from_form(a.coframe(i));
        let beta = DoubleSection::from_form(a.coframe(j));
        let tn = courant_nijenhuis_torsion(&e, op, &alpha, &beta).expect("ranks match");
        direct.push(section_clause(format!("torsion(E{},E{})", i + 1, j + 1), ClauseClass::ProofTensorial, &tn));
    }
    for t in &pairs {
        let (i, j) = (t[0], t[1]);
        let x = DoubleSection::from_vector(a.frame(i));
        let y = DoubleSection::from_vector(a.frame(j));
        let tn = courant_nijenhuis_torsion(&e, op, &x, &y).expect("ranks match");
        direct.push(section_clause(format!("torsion(e{},e{})", i + 1, j + 1), ClauseClass::ProofTensorial, &tn));
    }

    let mut blocks = Vec::new();
    blocks.push(vector_clause("poisson".into(), &a.schouten(pi, pi)));
    match n_pi(n, pi) {
        Ok(npi) => {
            for t in &pairs {
                let (al, be) = (a.coframe(t[0]), a.coframe(t[1]));
                let lhs = poisson_bracket(a, &npi, &al, &be);
                let nstar_br = poisson_bracket(a, pi, &n.apply(&al), &be)
                    .add(&poisson_bracket(a, pi, &al, &n.apply(&be)))
                    .sub(&n.apply(&poisson_bracket(a, pi, &al, &be)));
                let twist = contract2(phi, &pi_sharp(pi, &al), &pi_sharp(pi, &be));
                blocks.push(vector_clause(
                    format!("dual-bracket(E{},E{})", t[0] + 1, t[1] + 1),
                    &lhs.sub(&nstar_br).sub(&twist),
                ));
            }
        }
        Err(err) => blocks.push(Clause::boolean("dual-bracket", ClauseClass::ProofTensorial, false, &err.to_string())),
    }
    let dsigma = a.differential(sigma);
    let ninv = dsigma.add(&n.apply_derivation(phi));
    let d_nsigma = a.differential(&n_sigma(n, sigma));
    let i_n_dsigma = n.apply_derivation(&dsigma);
    for t in &pairs {
        let (x, y) = (a.frame(t[0]), a.frame(t[1]));
        let (nx, ny) = (n.apply(&x), n.apply(&y));
        let lhs = nijenhuis_torsion(a, n, &x, &y);
        let rhs = pi_sharp(pi, &contract2(&ninv, &x, &y)).sub(&n.apply(&pi_sharp(pi, &contract2(phi, &x, &y))));
        blocks.push(vector_clause(format!("torsion-n(e{},e{})", t[0] + 1, t[1] + 1), &lhs.sub(&rhs)));
        let lhs = contract2(&d_nsigma, &x, &y).add(&contract2(phi, &x, &y));
        let rhs = contract2(phi, &nx, &ny)
            .add(&n.apply(&contract2(phi, &nx, &y)))
            .add(&n.apply(&contract2(phi, &x, &ny)))
            .add(&contract2(&i_n_dsigma, &x, &y));
        blocks.push(vector_clause(format!("sigma(e{},e{})", t[0] + 1, t[1] + 1), &lhs.sub(&rhs)));
    }

    let direct_pass = direct.iter().all(|c| c.pass);
    let blocks_pass = blocks.iter().all(|c| c.pass);
    let mut rep = Report::new(task);
    rep.extend(direct);
    for mut c in blocks {
        c.name = format!("block.{}", c.name);
        rep.push(c);
    }
    rep.push(Clause::boolean(
        "equivalence",
        ClauseClass::ProofTensorial,
        direct_pass == blocks_pass,
        &format!("torsion={direct_pass} blocks={blocks_pass}"),
    ));
    rep
}

fn endo_clause(name: &str, m: &Endo) -> Clause {
    let r = m.rank();
    let parts: Vec<(String, RF)> = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .map(|(i, j)| (format!("[{},{}]", i + 1, j + 1), m.entry(i, j).clone()))
        .collect();
    Clause::components(name, ClauseClass::ProofTensorial, parts.iter().map(|(l, c)| (l.clone(), c)))
}

/// Nπ♯ = π♯N* and i_{NX}σ = N*(i_Xσ), then T_𝒩 = 0 on both blocks; on
/// success (A, π, N, dσ) must pass check-pqn.
pub fn check_theorem_pqn_from_paired(a: &Algebroid, op: &PairedOperator) -> Report {
    let task = "check-theorem-pqn-from-paired";
    if op.rank() != a.rank() {
        return Report::error(task, Error::ParentMismatch.to_string());
    }
    let n = op.n();
    let p = pi_sharp_matrix(op.pi());
    let s = op.sigma_flat();
    let nt = n.transpose();
    let mut hyp = vec![
        endo_clause("n-pi-sharp", &n.compose(&p).sub(&p.compose(&nt))),
        endo_clause("sigma-flat", &s.compose(n).sub(&nt.compose(&s))),
    ];
    let torsion = check_torsion_blocks(a, op, None);
    hyp.extend(
        torsion
            .clauses
            .iter()
            .filter(|c| c.name.starts_with("torsion("))
            .cloned(),
    );
    if !hyp.iter().all(|c| c.pass) {
        let names: Vec<String> = hyp.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        return Report::hypothesis_failed(task, hyp, format!("hypotheses fail at {}", names.join(", ")));
    }
    let mut rep = Report::new(task);
    rep.extend(hyp);
    let conclusion = check_pqn(a, op.pi(), n, &a.differential(op.sigma()));
    rep.absorb("conclusion.", &conclusion);
    rep.push(Clause::boolean(
        "consistency",
        ClauseClass::ProofTensorial,
        conclusion.passed(),
        "hypotheses hold but the conclusion fails: library bug",
    ));
    rep
}

/// 𝒩² = −Id blockwise, and ⟨𝒩e₁,𝒩e₂⟩ = ⟨e₁,e₂⟩ on frame pairs.
pub fn check_generalized_complex(op: &PairedOperator) -> Report {
    let r = op.rank();
    let n = op.n();
    let p = pi_sharp_matrix(op.pi());
    let s = op.sigma_flat();
    let nt = n.transpose();
    let id = Endo::identity(r);
    let mut clauses = vec![
        endo_clause("square(A)", &n.compose(n).add(&p.compose(&s)).add(&id)),
        endo_clause("n-pi-sharp", &n.compose(&p).sub(&p.compose(&nt))),
        endo_clause("sigma-flat", &s.compose(n).sub(&nt.compose(&s))),
        endo_clause("square(A*)", &s.compose(&p).add(&nt.compose(&nt)).add(&id)),
    ];
    let b = op.blocks();
    let frame: Vec<DoubleSection> = (0..r)
        .map(|i| DoubleSection::from_vector(GradedSection::basis(Variance::Multivector, r, &[i])))
        .chain((0..r).map(|i| DoubleSection::from_form(GradedSection::basis(Variance::Form, r, &[i]))))
        .collect();
    let pairing = |x: &DoubleSection, y: &DoubleSection| &x.form.pairing(&y.vector) + &y.form.pairing(&x.vector);
    let images: Vec<DoubleSection> = frame.iter().map(|f| b.apply(f).expect("same rank")).collect();
    let mut parts = Vec::new();
    for i in 0..2 * r {
        for j in i..2 * r {
            let v = &pairing(&images[i], &images[j]) - &pairing(&frame[i], &frame[j]);
            parts.push((format!("({},{})", i + 1, j + 1), v));
        }
    }
    clauses.push(Clause::components(
        "pairing-preserved",
        ClauseClass::ProofTensorial,
        parts.iter().map(|(l, c)| (l.clone(), c)),
    ));
    Report::from_clauses("check-generalized-complex", clauses)
}

/// (A ⊕ A*)_𝒩 (or its φ-twisted version) together with the quasi-Lie
/// bialgebroid whose double it is identified with.
#[derive(Clone, Debug)]
pub struct DeformedDouble {
    pub double: CourantDouble,
    pub op: PairedOperator,
    pub qlb: QuasiLieBialgebroid,
}

impl DeformedDouble {
    pub fn bracket(&self, e1: &DoubleSection, e2: &DoubleSection) -> Result<DoubleSection> {
        deformed_courant_bracket(&self.double, &self.op, e1, e2)
    }

    /// ρ_𝒩(X+α) = ρ(NX) + ρ(π♯α).
    pub fn anchor(&self, e: &DoubleSection) -> Result<Vec<RF>> {
        let a = self.double.base();
        let v = self.op.n.apply(&e.vector).add(&pi_sharp(&self.op.pi, &e.form));
        if e.rank() != a.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(a.anchor_of(&v))
    }

    /// ⟨𝒩e₁, 𝒩e₂⟩.
    pub fn pairing(&self, e1: &DoubleSection, e2: &DoubleSection) -> Result<RF> {
        self.double.pairing(&self.op.apply(e1)?, &self.op.apply(e2)?)
    }

    /// X + α ↦ α + X in the double of the quasi-Lie bialgebroid on A*.
    pub fn identify(e: &DoubleSection) -> DoubleSection {
        DoubleSection::new(e.form.flip(), e.vector.flip())
    }
}

/// The quasi-Lie bialgebroid (A*_π, d_N, dσ), or (A*_π, d′, dσ + i_Nφ) with
/// d′f = d_N f and d′α = d_Nα − i_{π♯α}φ.
pub fn deformed_qlb(a: &Algebroid, op: &PairedOperator, phi: Option<&GradedSection>) -> Result<QuasiLieBialgebroid> {
    let base = cotangent_algebroid(a, op.pi(), None)?;
    let an = a.deformed_by(op.n())?;
    let mut x = a.differential(op.sigma());
    let dual = match phi {
        None => an,
        Some(phi) => {
            x = x.add(&op.n().apply_derivation(phi));
            let pi = op.pi().clone();
            let phi = phi.clone();
            Algebroid::from_differential(a.coords().to_vec(), a.rank(), |mu| {
                let d = an.differential(mu);
                if mu.degree() == 1 {
                    d.sub(&pi_sharp(&pi, mu).insert_into(&phi))
                } else {
                    d
                }
            })?
        }
    };
    QuasiLieBialgebroid::new(base, dual, x.flip())
}

fn summarize(name: &str, results: Vec<(String, Option<String>)>) -> Clause {
    let total = results.len();
    let fails: Vec<&(String, Option<String>)> = results.iter().filter(|(_, r)| r.is_some()).collect();
    match fails.first() {
        None => Clause::boolean(name, ClauseClass::EvidenceSampled, true, ""),
        Some((at, res)) => Clause::boolean(
            name,
            ClauseClass::EvidenceSampled,
            false,
            &format!("{}/{}_fail;at({at}):{}", fails.len(), total, res.as_deref().unwrap_or_default()),
        ),
    }
}

/// Builds (A ⊕ A*)_𝒩 and compares its bracket, anchor and pairing with the
/// double of [`deformed_qlb`] on the section family.
pub fn build_deformed_double(
    a: &Algebroid,
    op: &PairedOperator,
    phi: Option<&GradedSection>,
    params: &FamilyParams,
) -> Result<(DeformedDouble, Report)> {
    let e = undeformed_double(a, phi)?;
    if op.rank() != a.rank() {
        return Err(Error::ParentMismatch);
    }
    let gc = check_generalized_complex(op);
    let tor = check_torsion_blocks(a, op, phi);
    let failing: Vec<String> = gc
        .failing()
        .chain(tor.failing().filter(|c| c.name.starts_with("torsion(")))
        .map(|c| c.name.clone())
        .collect();
    if !failing.is_empty() {
        return Err(Error::HypothesisNotSatisfied(failing.join(", ")));
    }
    let qlb = deformed_qlb(a, op, phi)?;
    let target = CourantDouble::qlb_double(&qlb);
    let dd = DeformedDouble {
        double: e.clone(),
        op: op.clone(),
        qlb,
    };
    let fam = CourantFamily::new(&e, params);
    let members: Vec<(String, DoubleSection)> = fam.frame.into_iter().chain(fam.scaled).chain(fam.random).collect();
    let id = DeformedDouble::identify;
    let show = |s: &DoubleSection| {
        s.residue_parts()
            .iter()
            .map(|(l, c)| format!("{l}:{c}"))
            .collect::<Vec<_>>()
            .join(";")
    };

    let mut bracket = Vec::new();
    let mut pairing = Vec::new();
    for (l1, e1) in &members {
        for (l2, e2) in &members {
            let lhs = id(&dd.bracket(e1, e2)?);
            let rhs = target.skew_bracket(&id(e1), &id(e2))?;
            let res = lhs.sub(&rhs);
            bracket.push((format!("{l1},{l2}"), (!res.is_zero()).then(|| show(&res))));
            let p = &dd.pairing(e1, e2)? - &target.pairing(&id(e1), &id(e2))?;
            pairing.push((format!("{l1},{l2}"), (!p.is_zero()).then(|| p.to_string())));
        }
    }
    let mut anchor = Vec::new();
    for (l, s) in &members {
        let lhs = dd.anchor(s)?;
        let rhs = target.anchor(&id(s))?;
        let parts: Vec<String> = a
            .coords()
            .iter()
            .zip(lhs.iter().zip(&rhs))
            .filter(|(_, (p, q))| p != q)
            .map(|(x, (p, q))| format!("d{x}:{}", p - q))
            .collect();
        anchor.push((l.clone(), (!parts.is_empty()).then(|| parts.join(";"))));
    }
    let mut rep = Report::new("build-deformed-double");
    rep.push(summarize("bracket", bracket));
    rep.push(summarize("anchor", anchor));
    rep.push(summarize("pairing", pairing));
    Ok((dd, rep.with_family(params.clone())))
}
