//! Courant algebroid structures on split doubles A ⊕ A*.

mod axioms;
mod dirac;

use std::collections::HashMap;
use std::fmt;

use crate::calculus::{Algebroid, GradedSection, Variance};
use crate::coeff::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::pn::qlb::QuasiLieBialgebroid;

pub use axioms::{verify_courant_axioms, CourantFamily};
pub use dirac::{build_morphism_graph, check_generalized_dirac, check_split_dirac, GeneralizedDirac, SplitSubbundle, Submanifold};

type RF = RationalFunction;

/// A section X + α of A ⊕ A*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSection {
    pub vector: GradedSection,
    pub form: GradedSection,
}

impl DoubleSection {
    pub fn new(vector: GradedSection, form: GradedSection) -> Self {
        assert_eq!(vector.variance(), Variance::Multivector);
        assert_eq!(form.variance(), Variance::Form);
        assert_eq!(vector.degree(), 1);
        assert_eq!(form.degree(), 1);
        DoubleSection { vector, form }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(
            GradedSection::zero(Variance::Multivector, rank, 1),
            GradedSection::zero(Variance::Form, rank, 1),
        )
    }

    pub fn from_vector(x: GradedSection) -> Self {
        let r = x.rank();
        Self::new(x, GradedSection::zero(Variance::Form, r, 1))
    }

    pub fn from_form(alpha: GradedSection) -> Self {
        let r = alpha.rank();
        Self::new(GradedSection::zero(Variance::Multivector, r, 1), alpha)
    }

    pub fn rank(&self) -> usize {
        self.vector.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.form.is_zero()
    }

    pub fn add(&self, other: &DoubleSection) -> DoubleSection {
        DoubleSection {
            vector: self.vector.add(&other.vector),
            form: self.form.add(&other.form),
        }
    }

    pub fn sub(&self, other: &DoubleSection) -> DoubleSection {
        DoubleSection {
            vector: self.vector.sub(&other.vector),
            form: self.form.sub(&other.form),
        }
    }

    pub fn neg(&self) -> DoubleSection {
        DoubleSection {
            vector: self.vector.neg(),
            form: self.form.neg(),
        }
    }

    pub fn scale(&self, f: &RF) -> DoubleSection {
        DoubleSection {
            vector: self.vector.scale(f),
            form: self.form.scale(f),
        }
    }

    pub fn map(&self, mut f: impl FnMut(&RF) -> RF) -> DoubleSection {
        DoubleSection {
            vector: self.vector.map(&mut f),
            form: self.form.map(&mut f),
        }
    }

    /// Coefficients in the frame e_1..e_r, E_1..E_r.
    pub fn coefficients(&self) -> Vec<RF> {
        let mut out = self.vector.components();
        out.extend(self.form.components());
        out
    }

    pub fn from_coefficients(rank: usize, c: &[RF]) -> DoubleSection {
        Self::new(
            GradedSection::vector(Variance::Multivector, c[..rank].to_vec()),
            GradedSection::vector(Variance::Form, c[rank..2 * rank].to_vec()),
        )
    }

    /// Nonzero components as `label:value` pairs.
    pub fn residue_parts(&self) -> Vec<(String, RF)> {
        let r = self.rank();
        self.coefficients()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let label = if i < r { format!("e{}", i + 1) } else { format!("E{}", i - r + 1) };
                (label, c)
            })
            .collect()
    }
}

impl fmt::Display for DoubleSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vector.is_zero(), self.form.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.vector),
            (true, false) => write!(f, "{}", self.form),
            (false, false) => write!(f, "{}+{}", self.vector, self.form),
        }
    }
}

/// A Courant algebroid structure on A ⊕ A*.
///
/// The structure is stored as the double of the proto-bialgebroid
/// (A, A*, ξ, ψ) with the pairing ⟨X+α, Y+β⟩ = α(Y) + β(X), transported by
/// the sign change ε^i ↦ s_i ε^i on the A* side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CourantDouble {
    label: String,
    base: Algebroid,
    dual: Algebroid,
    xi: GradedSection,
    psi: GradedSection,
    signs: Vec<i64>,
}

impl CourantDouble {
    fn raw(label: String, base: Algebroid, dual: Algebroid, xi: GradedSection, psi: GradedSection) -> Self {
        let r = base.rank();
        CourantDouble {
            label,
            base,
            dual,
            xi,
            psi,
            signs: vec![1; r],
        }
    }

    /// A ⊕ A* with the standard Courant bracket.
    pub fn standard(a: &Algebroid) -> Self {
        let r = a.rank();
        Self::raw(
            "standard".into(),
            a.clone(),
            Algebroid::null(a.coords().to_vec(), r),
            GradedSection::zero(Variance::Multivector, r, 3),
            GradedSection::zero(Variance::Form, r, 3),
        )
    }

    /// The standard double twisted by a 3-form φ.
    pub fn twisted(a: &Algebroid, phi: &GradedSection) -> Result<Self> {
        if phi.variance() != Variance::Form || phi.degree() != 3 || phi.rank() != a.rank() {
            return Err(Error::DegreeMismatch("the twist must be a 3-form of A".into()));
        }
        let mut e = Self::standard(a);
        e.label = "twisted".into();
        e.psi = phi.clone();
        Ok(e)
    }

    /// The double of a quasi-Lie bialgebroid.
    pub fn qlb_double(q: &QuasiLieBialgebroid) -> Self {
        let r = q.rank();
        Self::raw(
            "qlb-double".into(),
            q.base.clone(),
            q.dual.clone(),
            q.x.clone(),
            GradedSection::zero(Variance::Form, r, 3),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn coords(&self) -> &[Var] {
        self.base.coords()
    }

    pub fn base(&self) -> &Algebroid {
        &self.base
    }

    pub fn pairing_signs(&self) -> &[i64] {
        &self.signs
    }

    /// The same bracket and anchor with the pairing negated.
    pub fn conjugate(&self) -> Self {
        let label = match self.label.strip_prefix("conjugate(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("conjugate({})", self.label),
        };
        CourantDouble {
            label,
            base: self.base.clone(),
            dual: self.dual.negated(),
            xi: self.xi.clone(),
            psi: self.psi.neg(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// A renaming of `other`'s coordinates that avoids this double's names.
    pub fn disjoint_renaming(&self, other: &CourantDouble) -> HashMap<Var, Var> {
        let mut taken: Vec<Var> = self.coords().to_vec();
        taken.extend(other.coords().iter().cloned());
        let mut map = HashMap::new();
        for c in other.coords() {
            if !self.coords().contains(c) {
                continue;
            }
            let fresh = (2..)
                .map(|k| Var::from(format!("{c}_{k}").as_str()))
                .find(|v| !taken.contains(v))
                .expect("fresh name");
            taken.push(fresh.clone());
            map.insert(c.clone(), fresh);
        }
        map
    }

    /// The product over the product chart; `other`'s coordinates are
    /// renamed by [`Self::disjoint_renaming`] and its frame follows this one's.
    pub fn product(&self, other: &CourantDouble) -> CourantDouble {
        let map = self.disjoint_renaming(other);
        let subst: HashMap<Var, RF> = map.iter().map(|(a, b)| (a.clone(), RF::var(b))).collect();
        let ren = |s: &GradedSection| s.map(|c| c.substitute(&subst).expect("renaming keeps denominators"));
        let (r1, r2) = (self.rank(), other.rank());
        let r = r1 + r2;
        let base = self.base.product(&other.base.renamed(&map)).expect("disjoint product");
        let dual = self.dual.product(&other.dual.renamed(&map)).expect("disjoint product");
        let xi = self.xi.embed(r, 0).add(&ren(&other.xi).embed(r, r1));
        let psi = self.psi.embed(r, 0).add(&ren(&other.psi).embed(r, r1));
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().copied());
        CourantDouble {
            label: format!("product({},{})", self.label, other.label),
            base,
            dual,
            xi,
            psi,
            signs,
        }
    }

    fn check(&self, e: &DoubleSection) -> Result<()> {
        if e.rank() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    fn twist(&self, e: &DoubleSection) -> DoubleSection {
        if self.signs.iter().all(|&s| s == 1) {
            return e.clone();
        }
        let mut form = e.form.clone();
        for (i, &s) in self.signs.iter().enumerate() {
            if s < 0 {
                let c = form.get(&[i]);
                form.set(&[i], -c);
            }
        }
        DoubleSection {
            vector: e.vector.clone(),
            form,
        }
    }

    fn raw_pairing(e1: &DoubleSection, e2: &DoubleSection) -> RF {
        &e1.form.pairing(&e2.vector) + &e2.form.pairing(&e1.vector)
    }

    /// 𝒟f = d_* f + d f, so that ⟨𝒟f, e⟩ = ρ(e)f.
    fn raw_d(&self, f: &RF) -> DoubleSection {
        let r = self.rank();
        let scalar = GradedSection::scalar(Variance::Form, r, f.clone());
        DoubleSection {
            vector: self.dual.differential(&scalar).flip(),
            form: self.base.differential(&scalar),
        }
    }

    fn raw_skew(&self, e1: &DoubleSection, e2: &DoubleSection) -> DoubleSection {
        let (x, alpha) = (&e1.vector, &e1.form);
        let (y, beta) = (&e2.vector, &e2.form);
        let f = &alpha.pairing(y) - &beta.pairing(x);
        let half = RF::ratio(1, 2);
        let df = self.raw_d(&f).scale(&half);
        let dual_lie = |a: &GradedSection, z: &GradedSection| self.dual.lie_derivative(&a.flip(), &z.flip()).flip();
        let vector = self
            .base
            .bracket(x, y)
            .add(&dual_lie(alpha, y))
            .sub(&dual_lie(beta, x))
            .sub(&df.vector)
            .add(&beta.insert_into(&alpha.insert_into(&self.xi)));
        let form = self
            .dual
            .bracket(&alpha.flip(), &beta.flip())
            .flip()
            .add(&self.base.lie_derivative(x, beta))
            .sub(&self.base.lie_derivative(y, alpha))
            .add(&df.form)
            .add(&y.insert_into(&x.insert_into(&self.psi)));
        DoubleSection { vector, form }
    }

    fn raw_dorfman(&self, e1: &DoubleSection, e2: &DoubleSection) -> DoubleSection {
        let half = RF::ratio(1, 2);
        self.raw_skew(e1, e2)
            .add(&self.raw_d(&Self::raw_pairing(e1, e2)).scale(&half))
    }

    pub fn pairing(&self, e1: &DoubleSection, e2: &DoubleSection) -> Result<RF> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(Self::raw_pairing(&self.twist(e1), &self.twist(e2)))
    }

    /// ρ(e) as a vector field, by components in ∂_a.
    pub fn anchor(&self, e: &DoubleSection) -> Result<Vec<RF>> {
        self.check(e)?;
        let t = self.twist(e);
        let a = self.base.anchor_of(&t.vector);
        let b = self.dual.anchor_of(&t.form.flip());
        Ok(a.iter().zip(&b).map(|(p, q)| p + q).collect())
    }

    /// ρ(e) f.
    pub fn act(&self, e: &DoubleSection, f: &RF) -> Result<RF> {
        let v = self.anchor(e)?;
        Ok(self.coords().iter().zip(&v).map(|(x, c)| c * &f.differentiate(x)).sum())
    }

    /// ρ* df, characterized by ⟨ρ* df, e⟩ = ρ(e) f.
    pub fn rho_star_d(&self, f: &RF) -> DoubleSection {
        self.twist(&self.raw_d(f))
    }

    pub fn dorfman(&self, e1: &DoubleSection, e2: &DoubleSection) -> Result<DoubleSection> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(self.twist(&self.raw_dorfman(&self.twist(e1), &self.twist(e2))))
    }

    pub fn skew_bracket(&self, e1: &DoubleSection, e2: &DoubleSection) -> Result<DoubleSection> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(self.twist(&self.raw_skew(&self.twist(e1), &self.twist(e2))))
    }

    /// Frame sections e_1..e_r, E_1..E_r.
    pub fn frame(&self) -> Vec<DoubleSection> {
        let r = self.rank();
        let mut out: Vec<DoubleSection> = (0..r).map(|i| DoubleSection::from_vector(self.base.frame(i))).collect();
        out.extend((0..r).map(|i| DoubleSection::from_form(self.base.coframe(i))));
        out
    }
}

#[cfg(test)]
mod tests;
