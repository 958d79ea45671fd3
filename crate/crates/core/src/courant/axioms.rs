use rayon::prelude::*;

use crate::calculus::Variance;
use crate::coeff::RationalFunction;
use crate::family::{random_function, random_section};
use crate::report::{Clause, ClauseClass, FamilyParams, Report};

use super::{CourantDouble, DoubleSection};

type RF = RationalFunction;

/// The section family used by [`verify_courant_axioms`]: frame sections,
/// coordinate-scaled frame sections and `samples` seeded random sections.
#[derive(Clone, Debug)]
pub struct CourantFamily {
    pub frame: Vec<(String, DoubleSection)>,
    pub scaled: Vec<(String, DoubleSection)>,
    pub random: Vec<(String, DoubleSection)>,
    pub functions: Vec<(String, RF)>,
}

impl CourantFamily {
    pub fn new(e: &CourantDouble, params: &FamilyParams) -> Self {
        let r = e.rank();
        let labels: Vec<String> = (0..r)
            .map(|i| format!("e{}", i + 1))
            .chain((0..r).map(|i| format!("E{}", i + 1)))
            .collect();
        let frame: Vec<(String, DoubleSection)> = labels.iter().cloned().zip(e.frame()).collect();
        let mut scaled = Vec::new();
        for x in e.coords() {
            for (l, s) in &frame {
                scaled.push((format!("{x}*{l}"), s.scale(&RF::var(x))));
            }
        }
        let mut rng = params.rng(2);
        let random = (0..params.samples)
            .map(|s| {
                let v = random_section(&mut rng, Variance::Multivector, r, 1, e.coords(), params.max_degree);
                let a = random_section(&mut rng, Variance::Form, r, 1, e.coords(), params.max_degree);
                (format!("sample{}", s + 1), DoubleSection::new(v, a))
            })
            .collect();
        let mut functions: Vec<(String, RF)> = e.coords().iter().map(|x| (x.to_string(), RF::var(x))).collect();
        functions.push(("f".into(), random_function(&mut rng, e.coords(), params.max_degree)));
        CourantFamily {
            frame,
            scaled,
            random,
            functions,
        }
    }

    fn singles(&self) -> Vec<&(String, DoubleSection)> {
        self.frame.iter().chain(&self.scaled).chain(&self.random).collect()
    }

    /// Frame pairs, one scaled member with a frame member, consecutive
    /// random pairs.
    fn pairs(&self) -> Vec<[&(String, DoubleSection); 2]> {
        let mut out = Vec::new();
        for a in &self.frame {
            for b in &self.frame {
                out.push([a, b]);
            }
        }
        for s in &self.scaled {
            for f in &self.frame {
                out.push([s, f]);
                out.push([f, s]);
            }
        }
        let k = self.random.len();
        for i in 0..k {
            out.push([&self.random[i], &self.random[(i + 1) % k]]);
        }
        out
    }

    /// Frame triples, one scaled member among frame members in each
    /// position, consecutive random triples.
    fn triples(&self) -> Vec<[&(String, DoubleSection); 3]> {
        let mut out = Vec::new();
        for a in &self.frame {
            for b in &self.frame {
                for c in &self.frame {
                    out.push([a, b, c]);
                }
            }
        }
        for s in &self.scaled {
            for a in &self.frame {
                for b in &self.frame {
                    out.push([s, a, b]);
                    out.push([a, s, b]);
                    out.push([a, b, s]);
                }
            }
        }
        let k = self.random.len();
        for i in 0..k {
            out.push([&self.random[i], &self.random[(i + 1) % k], &self.random[(i + 2) % k]]);
        }
        out
    }
}

fn parts_string(parts: &[(String, RF)]) -> String {
    parts.iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(";")
}

fn summarize(name: &str, results: Vec<(String, Option<String>)>) -> Clause {
    let total = results.len();
    let failures: Vec<&(String, Option<String>)> = results.iter().filter(|(_, r)| r.is_some()).collect();
    match failures.first() {
        None => Clause {
            name: name.into(),
            class: ClauseClass::EvidenceSampled,
            residue: "0".into(),
            pass: true,
        },
        Some((at, res)) => Clause {
            name: name.into(),
            class: ClauseClass::EvidenceSampled,
            residue: format!(
                "{}/{}_fail;at({at}):{}",
                failures.len(),
                total,
                res.as_deref().unwrap_or_default()
            ),
            pass: false,
        },
    }
}

fn section_residue(e: &DoubleSection) -> Option<String> {
    if e.is_zero() {
        None
    } else {
        Some(parts_string(&e.residue_parts()))
    }
}

fn vector_field_bracket(e: &CourantDouble, v: &[RF], w: &[RF]) -> Vec<RF> {
    let xs = e.coords();
    (0..xs.len())
        .map(|a| {
            xs.iter()
                .enumerate()
                .map(|(b, x)| &(&v[b] * &w[a].differentiate(x)) - &(&w[b] * &v[a].differentiate(x)))
                .sum()
        })
        .collect()
}

/// Evaluates C1–C5 on the family of `params`; C2 is e∘e = κ ρ* d⟨e,e⟩.
pub fn verify_courant_axioms(e: &CourantDouble, params: &FamilyParams, kappa: &RF) -> Report {
    let fam = CourantFamily::new(e, params);
    let dorf = |a: &DoubleSection, b: &DoubleSection| e.dorfman(a, b).expect("family sections");
    let pair = |a: &DoubleSection, b: &DoubleSection| e.pairing(a, b).expect("family sections");
    let triples = fam.triples();
    let pairs = fam.pairs();

    let c1: Vec<(String, Option<String>)> = triples
        .par_iter()
        .map(|[(l1, e1), (l2, e2), (l3, e3)]| {
            let lhs = dorf(e1, &dorf(e2, e3));
            let rhs = dorf(&dorf(e1, e2), e3).add(&dorf(e2, &dorf(e1, e3)));
            (format!("{l1},{l2},{l3}"), section_residue(&lhs.sub(&rhs)))
        })
        .collect();

    let singles = fam.singles();
    let c2: Vec<(String, Option<String>)> = singles
        .par_iter()
        .map(|(l, s)| {
            let lhs = dorf(s, s);
            let rhs = e.rho_star_d(&pair(s, s)).scale(kappa);
            (l.clone(), section_residue(&lhs.sub(&rhs)))
        })
        .collect();

    let c3: Vec<(String, Option<String>)> = triples
        .par_iter()
        .map(|[(l, s), (l1, e1), (l2, e2)]| {
            let lhs = e.act(s, &pair(e1, e2)).expect("family sections");
            let rhs = &pair(&dorf(s, e1), e2) + &pair(e1, &dorf(s, e2));
            let res = &lhs - &rhs;
            (format!("{l},{l1},{l2}"), (!res.is_zero()).then(|| res.to_string()))
        })
        .collect();

    let c4: Vec<(String, Option<String>)> = pairs
        .par_iter()
        .map(|[(l1, e1), (l2, e2)]| {
            let lhs = e.anchor(&dorf(e1, e2)).expect("family sections");
            let v1 = e.anchor(e1).expect("family sections");
            let v2 = e.anchor(e2).expect("family sections");
            let rhs = vector_field_bracket(e, &v1, &v2);
            let parts: Vec<(String, RF)> = e
                .coords()
                .iter()
                .zip(lhs.iter().zip(&rhs))
                .map(|(x, (p, q))| (format!("d{x}"), p - q))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (format!("{l1},{l2}"), (!parts.is_empty()).then(|| parts_string(&parts)))
        })
        .collect();

    let c5_cases: Vec<(&[&(String, DoubleSection); 2], &(String, RF))> = pairs
        .iter()
        .flat_map(|p| fam.functions.iter().map(move |f| (p, f)))
        .collect();
    let c5: Vec<(String, Option<String>)> = c5_cases
        .par_iter()
        .map(|([(l1, e1), (l2, e2)], (lf, f))| {
            let lhs = dorf(e1, &e2.scale(f));
            let rhs = dorf(e1, e2)
                .scale(f)
                .add(&e2.scale(&e.act(e1, f).expect("family sections")));
            (format!("{l1},{lf}*{l2}"), section_residue(&lhs.sub(&rhs)))
        })
        .collect();

    let clauses = vec![
        summarize("C1", c1),
        summarize("C2", c2),
        summarize("C3", c3),
        summarize("C4", c4),
        summarize("C5", c5),
    ];
    Report::from_clauses("verify-courant-axioms", clauses).with_family(params.clone())
}
