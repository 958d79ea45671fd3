use std::collections::HashMap;

use crate::coeff::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::report::Report;

use super::algebroid::{form_clause, Algebroid};
use super::section::{GradedSection, Variance};

type RF = RationalFunction;

/// A bundle map Φ: A → B over φ: M → N.
///
/// `base_map[b]` expresses the b-th target coordinate in source coordinates;
/// `matrix[k][i]` is the ε^k_B-component of Φ(e_i), also in source coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMorphism {
    source: Algebroid,
    target: Algebroid,
    base_map: Vec<RF>,
    matrix: Vec<Vec<RF>>,
}

impl BundleMorphism {
    pub fn new(source: Algebroid, target: Algebroid, base_map: Vec<RF>, matrix: Vec<Vec<RF>>) -> Result<Self> {
        if base_map.len() != target.base_dim() {
            return Err(Error::MalformedMorphism(format!(
                "base map has {} entries, target base has dimension {}",
                base_map.len(),
                target.base_dim()
            )));
        }
        if matrix.len() != target.rank() || matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::MalformedMorphism(format!(
                "matrix must be {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        for f in base_map.iter().chain(matrix.iter().flatten()) {
            if let Some(v) = f.vars().into_iter().find(|v| !source.coords().contains(v)) {
                return Err(Error::MalformedMorphism(format!(
                    "`{v}` is not a source coordinate"
                )));
            }
        }
        Ok(BundleMorphism {
            source,
            target,
            base_map,
            matrix,
        })
    }

    /// Base map matching coordinates by name.
    pub fn same_base(source: Algebroid, target: Algebroid, matrix: Vec<Vec<RF>>) -> Result<Self> {
        let base_map = target.coords().iter().map(|c| RF::var(c)).collect();
        Self::new(source, target, base_map, matrix)
    }

    pub fn identity(a: &Algebroid) -> Self {
        let r = a.rank();
        let matrix = (0..r)
            .map(|k| (0..r).map(|i| if i == k { RF::one() } else { RF::zero() }).collect())
            .collect();
        Self::same_base(a.clone(), a.clone(), matrix).expect("identity")
    }

    pub fn source(&self) -> &Algebroid {
        &self.source
    }

    pub fn target(&self) -> &Algebroid {
        &self.target
    }

    pub fn base_map(&self) -> &[RF] {
        &self.base_map
    }

    pub fn matrix(&self) -> &[Vec<RF>] {
        &self.matrix
    }

    fn base_substitution(&self) -> HashMap<Var, RF> {
        self.target
            .coords()
            .iter()
            .cloned()
            .zip(self.base_map.iter().cloned())
            .collect()
    }

    /// f ∘ φ for a function on the target base.
    pub fn pull_function(&self, f: &RF) -> RF {
        f.substitute(&self.base_substitution())
            .expect("base map keeps denominators nonzero")
    }

    /// Φ X for a section of the source, with coefficients in source coordinates.
    pub fn push(&self, x: &GradedSection) -> GradedSection {
        assert_eq!(x.variance(), Variance::Multivector);
        assert_eq!(x.degree(), 1);
        let comps = x.components();
        let out = (0..self.target.rank())
            .map(|k| (0..self.source.rank()).map(|i| &self.matrix[k][i] * &comps[i]).sum())
            .collect();
        GradedSection::vector(Variance::Multivector, out)
    }

    /// ∧^k Φ on multivectors of the source.
    pub fn push_multivector(&self, p: &GradedSection) -> GradedSection {
        assert_eq!(p.variance(), Variance::Multivector);
        let images: Vec<GradedSection> = (0..self.source.rank())
            .map(|i| self.push(&self.source.frame(i)))
            .collect();
        let mut out = GradedSection::zero(Variance::Multivector, self.target.rank(), p.degree());
        for (idx, c) in p.terms() {
            let mut w = GradedSection::scalar(Variance::Multivector, self.target.rank(), c.clone());
            for &i in idx {
                w = w.wedge(&images[i]);
            }
            out = out.add(&w);
        }
        out
    }

    /// Φ* on the multiplicative extension, with the base map applied to
    /// coefficients.
    pub fn pullback(&self, mu: &GradedSection) -> GradedSection {
        assert_eq!(mu.variance(), Variance::Form);
        let r = self.source.rank();
        let images: Vec<GradedSection> = (0..self.target.rank())
            .map(|k| GradedSection::vector(Variance::Form, self.matrix[k].clone()))
            .collect();
        let subst = self.base_substitution();
        let mut out = GradedSection::zero(Variance::Form, r, mu.degree());
        for (idx, c) in mu.terms() {
            let c = c.substitute(&subst).expect("base map keeps denominators nonzero");
            let mut w = GradedSection::scalar(Variance::Form, r, c);
            for &k in idx {
                w = w.wedge(&images[k]);
            }
            out = out.add(&w);
        }
        out
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BundleMorphism) -> Result<BundleMorphism> {
        if other.source != self.target {
            return Err(Error::MalformedMorphism("composition of unmatched morphisms".into()));
        }
        let base_map = other.base_map.iter().map(|f| self.pull_function(f)).collect();
        let (rc, ra, rb) = (other.target.rank(), self.source.rank(), self.target.rank());
        let matrix = (0..rc)
            .map(|k| {
                (0..ra)
                    .map(|i| {
                        (0..rb)
                            .map(|j| &self.pull_function(&other.matrix[k][j]) * &self.matrix[j][i])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        BundleMorphism::new(self.source.clone(), other.target.clone(), base_map, matrix)
    }

    /// Φ* ∘ d_B = d_A ∘ Φ* on target coordinates and target coframe 1-forms.
    pub fn is_lie_algebroid_morphism(&self) -> Report {
        let (a, b) = (&self.source, &self.target);
        let mut clauses = Vec::new();
        for (bi, y) in b.coords().iter().enumerate() {
            let g = b.function(Variance::Form, b.coordinate(bi));
            let lhs = self.pullback(&b.differential(&g));
            let rhs = a.differential(&self.pullback(&g));
            clauses.push(form_clause(format!("chain({y})"), &lhs.sub(&rhs)));
        }
        for k in 0..b.rank() {
            let g = b.coframe(k);
            let lhs = self.pullback(&b.differential(&g));
            let rhs = a.differential(&self.pullback(&g));
            clauses.push(form_clause(format!("chain(E{})", k + 1), &lhs.sub(&rhs)));
        }
        Report::from_clauses("check-morphism", clauses)
    }
}
