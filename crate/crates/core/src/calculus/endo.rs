use std::fmt;

use crate::coeff::RationalFunction;

use super::section::{GradedSection, Variance};

/// An endomorphism of A in the frame: `N e_j = Σ_i m[i][j] e_i`.
/// On A* it acts as the transpose, `N* ε^i = Σ_j m[i][j] ε^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    m: Vec<Vec<RationalFunction>>,
}

impl Endo {
    pub fn new(m: Vec<Vec<RationalFunction>>) -> Self {
        let r = m.len();
        assert!(m.iter().all(|row| row.len() == r), "square matrix");
        Endo { m }
    }

    pub fn zero(r: usize) -> Self {
        Endo {
            m: vec![vec![RationalFunction::zero(); r]; r],
        }
    }

    pub fn identity(r: usize) -> Self {
        let mut e = Self::zero(r);
        for i in 0..r {
            e.m[i][i] = RationalFunction::one();
        }
        e
    }

    pub fn diagonal(d: Vec<RationalFunction>) -> Self {
        let mut e = Self::zero(d.len());
        for (i, v) in d.into_iter().enumerate() {
            e.m[i][i] = v;
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<RationalFunction>] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Endo {
        let r = self.rank();
        Endo {
            m: (0..r)
                .map(|i| (0..r).map(|j| self.m[j][i].clone()).collect())
                .collect(),
        }
    }

    pub fn compose(&self, other: &Endo) -> Endo {
        let r = self.rank();
        Endo {
            m: (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| (0..r).map(|k| &self.m[i][k] * &other.m[k][j]).sum())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Endo {
        Endo {
            m: self.m.iter().map(|row| row.iter().map(|c| -c).collect()).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Endo {
        Endo {
            m: self.m.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    fn zip(&self, other: &Endo, f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction) -> Endo {
        Endo {
            m: self
                .m
                .iter()
                .zip(&other.m)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    /// N X for a vector, or N* α for a covector.
    pub fn apply(&self, v: &GradedSection) -> GradedSection {
        assert_eq!(v.degree(), 1);
        let r = self.rank();
        let comps = v.components();
        let out: Vec<RationalFunction> = match v.variance() {
            Variance::Multivector => (0..r)
                .map(|i| (0..r).map(|j| &self.m[i][j] * &comps[j]).sum())
                .collect(),
            Variance::Form => (0..r)
                .map(|j| (0..r).map(|i| &self.m[i][j] * &comps[i]).sum())
                .collect(),
        };
        GradedSection::vector(v.variance(), out)
    }

    /// The image of a basis vector e_j (multivector) or ε^i (form).
    pub fn apply_basis(&self, variance: Variance, i: usize) -> GradedSection {
        self.apply(&GradedSection::basis(variance, self.rank(), &[i]))
    }

    /// Multiplicative extension ∧^k N (or ∧^k N*) to degree-k sections.
    pub fn apply_wedge(&self, s: &GradedSection) -> GradedSection {
        let r = self.rank();
        let images: Vec<GradedSection> = (0..r).map(|i| self.apply_basis(s.variance(), i)).collect();
        let mut out = GradedSection::zero(s.variance(), r, s.degree());
        for (idx, c) in s.terms() {
            let mut w = GradedSection::scalar(s.variance(), r, c.clone());
            for &i in idx {
                w = w.wedge(&images[i]);
            }
            out = out.add(&w);
        }
        out
    }

    /// Derivation extension: Σ over slots of N acting on one factor,
    /// so (i_N μ)(X1,…,Xk) = Σ μ(X1,…,NXi,…,Xk) on forms.
    pub fn apply_derivation(&self, s: &GradedSection) -> GradedSection {
        let r = self.rank();
        let images: Vec<GradedSection> = (0..r).map(|i| self.apply_basis(s.variance(), i)).collect();
        let mut out = GradedSection::zero(s.variance(), r, s.degree());
        for (idx, c) in s.terms() {
            for slot in 0..idx.len() {
                let mut w = GradedSection::scalar(s.variance(), r, c.clone());
                for (pos, &i) in idx.iter().enumerate() {
                    let f = if pos == slot {
                        images[i].clone()
                    } else {
                        GradedSection::basis(s.variance(), r, &[i])
                    };
                    w = w.wedge(&f);
                }
                out = out.add(&w);
            }
        }
        out
    }
}

impl fmt::Display for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
