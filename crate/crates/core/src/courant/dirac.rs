use std::collections::HashMap;

use crate::calculus::section::index_tuples;
use crate::calculus::{BundleMorphism, GradedSection, Variance};
use crate::coeff::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::pn::qlb::QuasiLieBialgebroid;
use crate::report::{Clause, ClauseClass, Report};

use super::{CourantDouble, DoubleSection};

type RF = RationalFunction;

/// A submanifold P given by equations x_k = g_k, where no g_k involves a
/// constrained coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submanifold {
    constraints: Vec<(Var, RF)>,
}

impl Submanifold {
    pub fn whole() -> Self {
        Submanifold { constraints: Vec::new() }
    }

    pub fn new(coords: &[Var], constraints: Vec<(Var, RF)>) -> Result<Self> {
        let fixed: Vec<&Var> = constraints.iter().map(|(v, _)| v).collect();
        for (i, (v, g)) in constraints.iter().enumerate() {
            if !coords.contains(v) {
                return Err(Error::UnknownCoordinate(v.to_string()));
            }
            if fixed[..i].contains(&v) {
                return Err(Error::MalformedPresentation(format!("`{v}` is constrained twice")));
            }
            if let Some(w) = g.vars().into_iter().find(|w| !coords.contains(w)) {
                return Err(Error::UnknownCoordinate(w.to_string()));
            }
            if let Some(w) = g.vars().into_iter().find(|w| fixed.contains(&w)) {
                return Err(Error::MalformedPresentation(format!(
                    "the equation for `{v}` involves the constrained coordinate `{w}`"
                )));
            }
        }
        Ok(Submanifold { constraints })
    }

    /// The coordinate subspace {x = 0 for x in `vanishing`}.
    pub fn coordinate_subspace(coords: &[Var], vanishing: &[&str]) -> Result<Self> {
        Self::new(coords, vanishing.iter().map(|v| (Var::from(*v), RF::zero())).collect())
    }

    pub fn constraints(&self) -> &[(Var, RF)] {
        &self.constraints
    }

    pub fn restrict(&self, f: &RF) -> RF {
        if self.constraints.is_empty() {
            return f.clone();
        }
        let subst: HashMap<Var, RF> = self.constraints.iter().cloned().collect();
        f.substitute(&subst).expect("restriction to P keeps denominators nonzero")
    }

    /// v(x_k − g_k) restricted to P, per constraint.
    pub fn tangency_residues(&self, coords: &[Var], v: &[RF]) -> Vec<(String, RF)> {
        self.constraints
            .iter()
            .map(|(x, g)| {
                let h = &RF::var(x) - g;
                let vh: RF = coords.iter().zip(v).map(|(c, vc)| vc * &h.differentiate(c)).sum();
                (format!("d{x}"), self.restrict(&vh))
            })
            .collect()
    }
}

/// A subbundle F of E over P, spanned by the given sections restricted to P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedDirac {
    pub support: Submanifold,
    pub generators: Vec<DoubleSection>,
}

impl GeneralizedDirac {
    pub fn new(support: Submanifold, generators: Vec<DoubleSection>) -> Self {
        GeneralizedDirac { support, generators }
    }

    /// TP ⊕ ν*P inside the double of a tangent bundle, for a coordinate
    /// subspace P.
    pub fn tangent_conormal(coords: &[Var], vanishing: &[&str]) -> Result<Self> {
        let support = Submanifold::coordinate_subspace(coords, vanishing)?;
        let r = coords.len();
        let gens = coords
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if vanishing.iter().any(|v| *v == x.as_ref()) {
                    DoubleSection::from_form(GradedSection::basis(Variance::Form, r, &[i]))
                } else {
                    DoubleSection::from_vector(GradedSection::basis(Variance::Multivector, r, &[i]))
                }
            })
            .collect();
        Ok(Self::new(support, gens))
    }

    /// The graph {π♯α + α} of a bivector over the whole base.
    pub fn bivector_graph(pi: &GradedSection) -> Self {
        let r = pi.rank();
        let gens = (0..r)
            .map(|j| {
                let eps = GradedSection::basis(Variance::Form, r, &[j]);
                DoubleSection::new(crate::pn::pi_sharp(pi, &eps), eps)
            })
            .collect();
        Self::new(Submanifold::whole(), gens)
    }

    fn restricted_rows(&self) -> Vec<Vec<RF>> {
        self.generators
            .iter()
            .map(|g| g.coefficients().iter().map(|c| self.support.restrict(c)).collect())
            .collect()
    }
}

/// L ⊂ A over P, with L^⊥ ⊂ A* its annihilator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSubbundle {
    pub support: Submanifold,
    pub l: Vec<GradedSection>,
    rank: usize,
    annihilator: Vec<GradedSection>,
}

impl SplitSubbundle {
    /// L spanned by `l` inside a bundle of rank `r`.
    pub fn new(support: Submanifold, r: usize, l: Vec<GradedSection>) -> Result<Self> {
        if l.iter().any(|x| x.variance() != Variance::Multivector || x.degree() != 1 || x.rank() != r) {
            return Err(Error::DegreeMismatch("L must be spanned by sections of A".into()));
        }
        let rows: Vec<Vec<RF>> = l
            .iter()
            .map(|x| x.components().iter().map(|c| support.restrict(c)).collect())
            .collect();
        let ech = Echelon::new(&rows, r);
        if ech.rank() != l.len() {
            return Err(Error::MalformedPresentation("generators of L are dependent on P".into()));
        }
        let annihilator = ech
            .null_space()
            .into_iter()
            .map(|v| GradedSection::vector(Variance::Form, v))
            .collect();
        Ok(SplitSubbundle {
            support,
            l,
            rank: r,
            annihilator,
        })
    }

    /// A basis of L^⊥.
    pub fn annihilator(&self) -> &[GradedSection] {
        &self.annihilator
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// F = L ⊕ L^⊥.
    pub fn dirac(&self) -> GeneralizedDirac {
        let gens = self
            .l
            .iter()
            .cloned()
            .map(DoubleSection::from_vector)
            .chain(self.annihilator.iter().cloned().map(DoubleSection::from_form))
            .collect();
        GeneralizedDirac::new(self.support.clone(), gens)
    }
}

fn reduce_clause(name: String, ech: &Echelon, labels: &[String], v: &[RF]) -> Clause {
    let rem = ech.reduce(v);
    Clause::components(name, ClauseClass::ProofGenerators, labels.iter().cloned().zip(rem.iter()))
}

fn frame_labels(r: usize) -> Vec<String> {
    (0..r)
        .map(|i| format!("e{}", i + 1))
        .chain((0..r).map(|i| format!("E{}", i + 1)))
        .collect()
}

/// D1 (rank and isotropy on P), D2 (ρ(F) ⊂ TP) and D3 (closure of the
/// generators under ∘, restricted to P).
pub fn check_generalized_dirac(e: &CourantDouble, f: &GeneralizedDirac) -> Report {
    let r = e.rank();
    let mut rep = Report::new("check-generalized-dirac");
    if let Some(g) = f.generators.iter().find(|g| g.rank() != r) {
        return Report::error("check-generalized-dirac", format!("generator {g} does not live on this double"));
    }
    let p = &f.support;
    let rows = f.restricted_rows();
    let ech = Echelon::new(&rows, 2 * r);
    rep.push(Clause::boolean(
        "D1.rank",
        ClauseClass::ProofTensorial,
        ech.rank() == r,
        &format!("rank={}/{}", ech.rank(), r),
    ));
    let n = f.generators.len();
    for i in 0..n {
        for j in i..n {
            let v = p.restrict(&e.pairing(&f.generators[i], &f.generators[j]).expect("rank checked"));
            rep.push(Clause::scalar(
                format!("D1.isotropic(g{},g{})", i + 1, j + 1),
                ClauseClass::ProofTensorial,
                &v,
            ));
        }
    }
    for (i, g) in f.generators.iter().enumerate() {
        let v = e.anchor(g).expect("rank checked");
        let res = p.tangency_residues(e.coords(), &v);
        rep.push(Clause::components(
            format!("D2(g{})", i + 1),
            ClauseClass::ProofTensorial,
            res.iter().map(|(l, c)| (l.clone(), c)),
        ));
    }
    let labels = frame_labels(r);
    for i in 0..n {
        for j in 0..n {
            let d = e.dorfman(&f.generators[i], &f.generators[j]).expect("rank checked");
            let v: Vec<RF> = d.coefficients().iter().map(|c| p.restrict(c)).collect();
            rep.push(reduce_clause(format!("D3(g{},g{})", i + 1, j + 1), &ech, &labels, &v));
        }
    }
    rep
}

/// Evaluates the four conditions of the split-Dirac theorem for F = L ⊕ L^⊥
/// in the double of `q`, checks F directly, and asserts that the two
/// verdicts agree.
pub fn check_split_dirac(q: &QuasiLieBialgebroid, l: &SplitSubbundle) -> Report {
    let a = &q.base;
    let r = a.rank();
    let mut rep = Report::new("check-split-dirac");
    if l.rank() != r {
        return Report::error("check-split-dirac", "L does not live in the base of the quasi-Lie bialgebroid");
    }
    let p = &l.support;
    let restrict = |s: &GradedSection| -> Vec<RF> { s.components().iter().map(|c| p.restrict(c)).collect() };
    let lvec: Vec<Vec<RF>> = l.l.iter().map(restrict).collect();
    let lperp = l.annihilator();
    let mvec: Vec<Vec<RF>> = lperp.iter().map(restrict).collect();
    let l_ech = Echelon::new(&lvec, r);
    let m_ech = Echelon::new(&mvec, r);
    let vlabels: Vec<String> = (0..r).map(|i| format!("e{}", i + 1)).collect();
    let flabels: Vec<String> = (0..r).map(|i| format!("E{}", i + 1)).collect();

    let mut conds = Vec::new();
    for (i, x) in l.l.iter().enumerate() {
        let res = p.tangency_residues(a.coords(), &a.anchor_of(x));
        conds.push(Clause::components(
            format!("cond1.anchor(l{})", i + 1),
            ClauseClass::ProofTensorial,
            res.iter().map(|(s, c)| (s.clone(), c)),
        ));
    }
    for t in index_tuples(l.l.len(), 2) {
        let br = a.bracket(&l.l[t[0]], &l.l[t[1]]);
        conds.push(reduce_clause(
            format!("cond1.bracket(l{},l{})", t[0] + 1, t[1] + 1),
            &l_ech,
            &vlabels,
            &restrict(&br),
        ));
    }
    for t in index_tuples(lperp.len(), 2) {
        let br = q.dual.bracket(&lperp[t[0]].flip(), &lperp[t[1]].flip()).flip();
        conds.push(reduce_clause(
            format!("cond2.bracket(m{},m{})", t[0] + 1, t[1] + 1),
            &m_ech,
            &flabels,
            &restrict(&br),
        ));
    }
    for (i, m) in lperp.iter().enumerate() {
        let res = p.tangency_residues(a.coords(), &q.dual.anchor_of(&m.flip()));
        conds.push(Clause::components(
            format!("cond3.anchor(m{})", i + 1),
            ClauseClass::ProofTensorial,
            res.iter().map(|(s, c)| (s.clone(), c)),
        ));
    }
    for t in index_tuples(lperp.len(), 3) {
        let (x, y, z) = (&lperp[t[0]], &lperp[t[1]], &lperp[t[2]]);
        let v = p.restrict(&z.pairing(&y.insert_into(&x.insert_into(&q.x))));
        conds.push(Clause::scalar(
            format!("cond4.twist(m{},m{},m{})", t[0] + 1, t[1] + 1, t[2] + 1),
            ClauseClass::ProofTensorial,
            &v,
        ));
    }
    let conds_pass = conds.iter().all(|c| c.pass);
    rep.extend(conds);
    let direct = check_generalized_dirac(&CourantDouble::qlb_double(q), &l.dirac());
    rep.absorb("dirac.", &direct);
    let direct_pass = direct.passed();
    rep.push(Clause::boolean(
        "biconditional",
        ClauseClass::ProofTensorial,
        conds_pass == direct_pass,
        &format!("conditions={conds_pass} dirac={direct_pass}"),
    ));
    rep
}

/// The graph of Φ in E_A × Ē_B over the graph of the base map, spanned by
/// (e_i, Φe_i) and (Φ*ε^j, ε^j).
pub fn build_morphism_graph(
    phi: &BundleMorphism,
    qa: &QuasiLieBialgebroid,
    qb: &QuasiLieBialgebroid,
) -> Result<(CourantDouble, GeneralizedDirac)> {
    if phi.source() != &qa.base || phi.target() != &qb.base {
        return Err(Error::MalformedMorphism(
            "morphism must map the first quasi-Lie bialgebroid to the second".into(),
        ));
    }
    let e1 = CourantDouble::qlb_double(qa);
    let e2 = CourantDouble::qlb_double(qb).conjugate();
    let renaming = e1.disjoint_renaming(&e2);
    let e = e1.product(&e2);
    let (ra, rb) = (qa.rank(), qb.rank());
    let rt = ra + rb;
    let constraints = qb
        .base
        .coords()
        .iter()
        .zip(phi.base_map())
        .map(|(y, f)| (renaming.get(y).cloned().unwrap_or_else(|| y.clone()), f.clone()))
        .collect();
    let support = Submanifold::new(e.coords(), constraints)?;
    let mut gens = Vec::new();
    for i in 0..ra {
        let x = qa.base.frame(i);
        let v = x.embed(rt, 0).add(&phi.push(&x).embed(rt, ra));
        gens.push(DoubleSection::from_vector(v));
    }
    for j in 0..rb {
        let eps = qb.base.coframe(j);
        let a = phi.pullback(&eps).embed(rt, 0).add(&eps.embed(rt, ra));
        gens.push(DoubleSection::from_form(a));
    }
    Ok((e, GeneralizedDirac::new(support, gens)))
}
