//! Multivectors and forms on a rank-r bundle in a fixed local frame.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Multivector,
    Form,
}

impl Variance {
    pub fn dual(self) -> Variance {
        match self {
            Variance::Multivector => Variance::Form,
            Variance::Form => Variance::Multivector,
        }
    }
}

/// A homogeneous section of ∧^p A (multivector) or ∧^p A* (form).
///
/// Coefficients are keyed by strictly increasing 0-based frame index tuples;
/// missing keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSection {
    variance: Variance,
    rank: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, RationalFunction>,
}

/// Sign of the permutation sorting `seq`, or `None` on a repeated entry.
pub fn sort_sign(seq: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

/// All strictly increasing tuples of length `k` from `0..r`.
pub fn index_tuples(r: usize, k: usize) -> Vec<Vec<usize>> {
    if k > r {
        return Vec::new();
    }
    itertools::Itertools::combinations(0..r, k).collect()
}

impl GradedSection {
    pub fn zero(variance: Variance, rank: usize, degree: usize) -> Self {
        GradedSection {
            variance,
            rank,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(variance: Variance, rank: usize, f: RationalFunction) -> Self {
        let mut s = Self::zero(variance, rank, 0);
        s.set(&[], f);
        s
    }

    /// The basis element e_{i1}∧…∧e_{ik} (or ε^{i1}∧…), indices in any order.
    pub fn basis(variance: Variance, rank: usize, idx: &[usize]) -> Self {
        let mut s = Self::zero(variance, rank, idx.len());
        if let Some((sign, sorted)) = sort_sign(idx) {
            s.coeffs.insert(sorted, RationalFunction::integer(sign));
        }
        s
    }

    pub fn from_fn(
        variance: Variance,
        rank: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> RationalFunction,
    ) -> Self {
        let mut s = Self::zero(variance, rank, degree);
        for idx in index_tuples(rank, degree) {
            let c = f(&idx);
            s.set(&idx, c);
        }
        s
    }

    /// Degree-one section with the given components.
    pub fn vector(variance: Variance, comps: Vec<RationalFunction>) -> Self {
        let rank = comps.len();
        let mut s = Self::zero(variance, rank, 1);
        for (i, c) in comps.into_iter().enumerate() {
            s.set(&[i], c);
        }
        s
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient on a sorted index tuple.
    pub fn get(&self, idx: &[usize]) -> RationalFunction {
        self.coeffs.get(idx).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn get_ref(&self, idx: &[usize]) -> Option<&RationalFunction> {
        self.coeffs.get(idx)
    }

    /// Antisymmetric component: coefficient on an unsorted tuple.
    pub fn component(&self, idx: &[usize]) -> RationalFunction {
        match sort_sign(idx) {
            Some((1, s)) => self.get(&s),
            Some((_, s)) => -self.get(&s),
            None => RationalFunction::zero(),
        }
    }

    pub fn set(&mut self, idx: &[usize], value: RationalFunction) {
        debug_assert_eq!(idx.len(), self.degree);
        if value.is_zero() {
            self.coeffs.remove(idx);
        } else {
            self.coeffs.insert(idx.to_vec(), value);
        }
    }

    pub fn add_to(&mut self, idx: &[usize], value: &RationalFunction) {
        if value.is_zero() {
            return;
        }
        let v = &self.get(idx) + value;
        self.set(idx, v);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RationalFunction)> {
        self.coeffs.iter()
    }

    pub fn scalar_value(&self) -> RationalFunction {
        self.get(&[])
    }

    /// Components of a degree-one section.
    pub fn components(&self) -> Vec<RationalFunction> {
        (0..self.rank).map(|i| self.get(&[i])).collect()
    }

    fn check_same(&self, other: &GradedSection) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::ParentMismatch);
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch(format!(
                "{:?} and {:?}",
                self.variance, other.variance
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedSection) -> Result<GradedSection> {
        self.check_same(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "adding degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_to(k, v);
        }
        Ok(out)
    }

    pub fn add(&self, other: &GradedSection) -> GradedSection {
        self.try_add(other).expect("compatible sections")
    }

    pub fn sub(&self, other: &GradedSection) -> GradedSection {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedSection {
        self.map(|c| -c)
    }

    pub fn scale(&self, f: &RationalFunction) -> GradedSection {
        if f.is_zero() {
            return Self::zero(self.variance, self.rank, self.degree);
        }
        self.map(|c| c * f)
    }

    pub fn scale_int(&self, k: i64) -> GradedSection {
        self.map(|c| c.scale_int(k))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, mut f: impl FnMut(&RationalFunction) -> RationalFunction) -> GradedSection {
        let mut out = Self::zero(self.variance, self.rank, self.degree);
        for (k, v) in &self.coeffs {
            out.set(k, f(v));
        }
        out
    }

    pub fn try_map(
        &self,
        mut f: impl FnMut(&RationalFunction) -> Result<RationalFunction>,
    ) -> Result<GradedSection> {
        let mut out = Self::zero(self.variance, self.rank, self.degree);
        for (k, v) in &self.coeffs {
            out.set(k, f(v)?);
        }
        Ok(out)
    }

    /// Reinterprets ∧A* as ∧(A*)** and vice versa, keeping coefficients.
    pub fn flip(&self) -> GradedSection {
        GradedSection {
            variance: self.variance.dual(),
            ..self.clone()
        }
    }

    pub fn try_wedge(&self, other: &GradedSection) -> Result<GradedSection> {
        self.check_same(other)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.variance, self.rank, degree);
        if degree > self.rank {
            return Ok(out);
        }
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut cat = i.clone();
                cat.extend_from_slice(j);
                if let Some((sign, k)) = sort_sign(&cat) {
                    let p = a * b;
                    out.add_to(&k, &if sign < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &GradedSection) -> GradedSection {
        self.try_wedge(other).expect("compatible sections")
    }

    /// Inserts `self` (degree p) into the first p slots of `outer` (degree k,
    /// opposite variance): the result is `outer(self, -)` of degree k−p.
    /// For a vector X this is i_X, and i_{X∧Y} = i_Y ∘ i_X.
    pub fn try_insert_into(&self, outer: &GradedSection) -> Result<GradedSection> {
        if self.rank != outer.rank {
            return Err(Error::ParentMismatch);
        }
        if self.variance == outer.variance {
            return Err(Error::VarianceMismatch(
                "contraction needs opposite variances".into(),
            ));
        }
        if self.degree > outer.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot insert degree {} into degree {}",
                self.degree, outer.degree
            )));
        }
        let mut out = Self::zero(outer.variance, outer.rank, outer.degree - self.degree);
        for (i, a) in &self.coeffs {
            for (k, b) in &outer.coeffs {
                if !i.iter().all(|x| k.contains(x)) {
                    continue;
                }
                let rest: Vec<usize> = k.iter().copied().filter(|x| !i.contains(x)).collect();
                let mut cat = i.clone();
                cat.extend_from_slice(&rest);
                let (sign, _) = sort_sign(&cat).expect("distinct");
                let p = a * b;
                out.add_to(&rest, &if sign < 0 { -p } else { p });
            }
        }
        Ok(out)
    }

    pub fn insert_into(&self, outer: &GradedSection) -> GradedSection {
        self.try_insert_into(outer).expect("compatible sections")
    }

    /// The same section in a bundle of rank `rank` whose frame contains this
    /// one's at positions `offset..`.
    pub fn embed(&self, rank: usize, offset: usize) -> GradedSection {
        assert!(offset + self.rank <= rank);
        let mut out = Self::zero(self.variance, rank, self.degree);
        for (k, c) in &self.coeffs {
            let idx: Vec<usize> = k.iter().map(|i| i + offset).collect();
            out.set(&idx, c.clone());
        }
        out
    }

    /// Components at positions `offset..offset + rank`, dropping terms that
    /// leave the block.
    pub fn restrict_block(&self, rank: usize, offset: usize) -> GradedSection {
        let mut out = Self::zero(self.variance, rank, self.degree);
        for (k, c) in &self.coeffs {
            if k.iter().all(|&i| i >= offset && i < offset + rank) {
                let idx: Vec<usize> = k.iter().map(|i| i - offset).collect();
                out.set(&idx, c.clone());
            }
        }
        out
    }

    /// Determinant pairing of equal-degree sections of opposite variance.
    pub fn try_pairing(&self, other: &GradedSection) -> Result<RationalFunction> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "pairing degree {} with degree {}",
                self.degree, other.degree
            )));
        }
        Ok(self.try_insert_into(other)?.scalar_value())
    }

    pub fn pairing(&self, other: &GradedSection) -> RationalFunction {
        self.try_pairing(other).expect("compatible sections")
    }

    /// Evaluates a form on degree-one arguments, μ(X1, …, Xk).
    pub fn evaluate(&self, args: &[&GradedSection]) -> RationalFunction {
        assert_eq!(args.len(), self.degree);
        let mut acc = RationalFunction::zero();
        for (k, c) in &self.coeffs {
            // det of [args[a]_{k[b]}]
            let det = permanent_sign_sum(k, args);
            acc = &acc + &(c * &det);
        }
        acc
    }
}

fn permanent_sign_sum(k: &[usize], args: &[&GradedSection]) -> RationalFunction {
    let n = k.len();
    if n == 0 {
        return RationalFunction::one();
    }
    let mut acc = RationalFunction::zero();
    for perm in itertools::Itertools::permutations(0..n, n) {
        let mut term = RationalFunction::one();
        for (a, &b) in perm.iter().enumerate() {
            let c = args[a].get(&[k[b]]);
            if c.is_zero() {
                term = RationalFunction::zero();
                break;
            }
            term = &term * &c;
        }
        if term.is_zero() {
            continue;
        }
        let (sign, _) = sort_sign(&perm).expect("permutation");
        acc = if sign < 0 { &acc - &term } else { &acc + &term };
    }
    acc
}

impl fmt::Display for GradedSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let sym = match self.variance {
            Variance::Multivector => "e",
            Variance::Form => "E",
        };
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if k.is_empty() {
                write!(f, "{c}")?;
                continue;
            }
            let basis: Vec<String> = k.iter().map(|i| format!("{sym}{}", i + 1)).collect();
            write!(f, "({c})*{}", basis.join("^"))?;
        }
        Ok(())
    }
}
