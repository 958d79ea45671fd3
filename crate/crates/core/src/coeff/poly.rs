//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are identified by name. Terms are kept in a `BTreeMap` keyed by
//! monomials under graded-lexicographic order, so the last entry is always the
//! leading term.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::RationalFunction;

pub type Var = Arc<str>;

/// A power product `x^a * y^b * ...`, stored sorted by variable name with
/// strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &Var) -> Self {
        Monomial(vec![(name.clone(), 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, v: &str) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| &**w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if e - f > 0 {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Greatest common divisor (componentwise minimum of exponents).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1.min(other.0[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    fn without(&self, v: &str) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, f)| {
                if &**w == v {
                    e = *f;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lex: the first variable (by name) whose exponents differ decides.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((v, e)), Some((w, f))) => match v.cmp(w) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn integer(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &Var) -> Self {
        Poly::term(BigRational::one(), Monomial::var(name))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under graded-lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut out, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, d)| (n.mul(m), d * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: &str) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let pairs = m
                .0
                .iter()
                .map(|(w, f)| if &**w == v { (w.clone(), f - 1) } else { (w.clone(), *f) })
                .collect();
            out.add_term(
                Monomial::from_pairs(pairs),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let m = rm.div(&lm)?;
            let c = rc / &lc;
            rem = rem.sub(&divisor.mul_term(&m, &c));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: &str) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    fn from_coefficients_in(v: &Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            let vk = Monomial::from_pairs(vec![(v.clone(), k as u32)]);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&vk), c.clone());
            }
        }
        out
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Content with respect to `v`: the gcd of the coefficients in `v`.
    fn content_in(&self, v: &str) -> Poly {
        let mut g = Poly::zero();
        for c in self.coefficients_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn monomial_content(&self) -> Monomial {
        let mut terms = self.terms.keys();
        let first = terms.next().cloned().unwrap_or_else(Monomial::one);
        terms.fold(first, |g, m| g.gcd(m))
    }

    fn primitive_part_in(&self, v: &Var) -> Poly {
        let content = self.content_in(v);
        if content.is_one() {
            return self.monic();
        }
        let coeffs: Vec<Poly> = self
            .coefficients_in(v)
            .iter()
            .map(|c| c.div_exact(&content).expect("content divides every coefficient"))
            .collect();
        Poly::from_coefficients_in(v, &coeffs).monic()
    }

    /// Simultaneous substitution of variables by rational functions.
    /// Variables missing from `map` are kept.
    pub fn substitute(&self, map: &HashMap<Var, RationalFunction>) -> RationalFunction {
        if self.vars().iter().all(|v| !map.contains_key(v)) {
            return RationalFunction::from_poly(self.clone());
        }
        let mut powers: HashMap<(Var, u32), RationalFunction> = HashMap::new();
        let mut acc = RationalFunction::zero();
        for (m, c) in &self.terms {
            let mut t = RationalFunction::constant(c.clone());
            for (v, e) in &m.0 {
                let factor = powers
                    .entry((v.clone(), *e))
                    .or_insert_with(|| match map.get(v) {
                        Some(val) => val.pow(*e as i32).expect("nonnegative power"),
                        None => RationalFunction::from_poly(Poly::var(v).pow(*e)),
                    })
                    .clone();
                t = &t * &factor;
            }
            acc = &acc + &t;
        }
        acc
    }
}

fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    let mut steps = (r.len() + 1).saturating_sub(b.len());
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        steps -= 1;
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            let k = j + dr - db;
            r[k] = r[k].sub(&lr.mul(bj));
        }
        trim(&mut r);
    }
    if steps > 0 {
        let f = lcb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn trim(r: &mut Vec<Poly>) {
    while r.len() > 1 && r.last().map(Poly::is_zero).unwrap_or(false) {
        r.pop();
    }
}

fn single_term_gcd(t: &Poly, other: &Poly) -> Poly {
    let (m, _) = t.leading().expect("nonzero");
    let mut g = m.clone();
    for n in other.terms.keys() {
        g = g.gcd(n);
        if g.is_one() {
            break;
        }
    }
    Poly::term(BigRational::one(), g)
}

/// Greatest common divisor in `Q[x_1, ..., x_n]`, normalized to leading
/// coefficient one (zero only when both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 {
        return single_term_gcd(a, b);
    }
    if b.len() == 1 {
        return single_term_gcd(b, a);
    }
    if a == b {
        return a.monic();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    if !ma.is_one() || !mb.is_one() {
        let m = Poly::term(BigRational::one(), ma.gcd(&mb));
        let strip = |p: &Poly, q: &Monomial| Poly {
            terms: p.terms.iter().map(|(t, c)| (t.div(q).expect("divides"), c.clone())).collect(),
        };
        return m.mul(&gcd(&strip(a, &ma), &strip(b, &mb)));
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if large.div_exact(small).is_some() {
        return small.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(v) = va.symmetric_difference(&vb).next() {
        return if va.contains(v) {
            gcd(&a.content_in(v), b)
        } else {
            gcd(a, &b.content_in(v))
        };
    }
    if let Some(v) = va.iter().find(|v| coprime_in(a, b, v)) {
        return gcd(&a.content_in(v), &b.content_in(v));
    }
    let v = va
        .iter()
        .min_by_key(|v| a.degree_in(v).max(b.degree_in(v)))
        .cloned()
        .expect("nonconstant");
    let content = gcd(&a.content_in(&v), &b.content_in(&v));
    let prim = subresultant_gcd(&a.primitive_part_in(&v), &b.primitive_part_in(&v), &v);
    content.mul(&prim).monic()
}

fn evaluate_except(p: &Poly, point: &HashMap<&Var, BigRational>) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (x, e) in &m.0 {
            t *= num_traits::pow(point[x].clone(), *e as usize);
        }
        total += t;
    }
    total
}

fn univariate_gcd_degree(a: Vec<BigRational>, b: Vec<BigRational>) -> usize {
    let strip = |mut p: Vec<BigRational>| {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    };
    let (mut r0, mut r1) = (strip(a), strip(b));
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let lc = r1.last().unwrap().clone();
        while r0.len() >= r1.len() {
            let q = r0.last().unwrap() / &lc;
            let shift = r0.len() - r1.len();
            for (j, c) in r1.iter().enumerate() {
                r0[j + shift] -= &q * c;
            }
            r0.pop();
            r0 = strip(r0);
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    r0.len().saturating_sub(1)
}

/// True when some specialization of the other variables keeps both leading
/// coefficients in `v` and has a constant gcd, which bounds the degree in
/// `v` of the true gcd by zero.
fn coprime_in(a: &Poly, b: &Poly, v: &Var) -> bool {
    let (ca, cb) = (a.coefficients_in(v), b.coefficients_in(v));
    let others: BTreeSet<Var> = a.vars().union(&b.vars()).filter(|x| *x != v).cloned().collect();
    for k in 0..6i64 {
        let point: HashMap<&Var, BigRational> = others
            .iter()
            .enumerate()
            .map(|(i, x)| (x, BigRational::from_integer(BigInt::from((i as i64 + 2) * (k + 3) - 2 * k))))
            .collect();
        let ea: Vec<BigRational> = ca.iter().map(|c| evaluate_except(c, &point)).collect();
        let eb: Vec<BigRational> = cb.iter().map(|c| evaluate_except(c, &point)).collect();
        if ea.last().unwrap().is_zero() || eb.last().unwrap().is_zero() {
            continue;
        }
        return univariate_gcd_degree(ea, eb) == 0;
    }
    false
}

/// Subresultant remainder sequence in `v`; only the last remainder is made
/// primitive.
fn subresultant_gcd(a: &Poly, b: &Poly, v: &Var) -> Poly {
    let (mut r0, mut r1) = (a.coefficients_in(v), b.coefficients_in(v));
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let (mut g, mut h) = (Poly::one(), Poly::one());
    loop {
        let delta = (r0.len() - r1.len()) as u32;
        let rem = pseudo_remainder(&r0, &r1);
        if rem.len() == 1 && rem[0].is_zero() {
            return Poly::from_coefficients_in(v, &r1).primitive_part_in(v);
        }
        if rem.len() == 1 {
            return Poly::one();
        }
        let divisor = g.mul(&h.pow(delta));
        r0 = r1;
        r1 = rem
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        g = r0.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

fn fmt_coefficient(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coefficient(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coefficient(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Poly {
        Poly::var(&Var::from(name))
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let x = Monomial::var(&Var::from("x1"));
        let y = Monomial::var(&Var::from("x2"));
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert!(x.mul(&y) > y.mul(&y));
    }

    #[test]
    fn exact_division_and_failure() {
        let x = v("x1");
        let y = v("x2");
        let p = x.mul(&x).sub(&y.mul(&y));
        let q = x.sub(&y);
        assert_eq!(p.div_exact(&q), Some(x.add(&y)));
        assert_eq!(p.div_exact(&x), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let x = v("x1");
        let y = v("x2");
        let z = v("x3");
        let common = x.mul(&y).add(&z).add(&Poly::integer(1));
        let a = common.mul(&x.sub(&y));
        let b = common.mul(&z.mul(&z).add(&y));
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let x = v("x1");
        let y = v("x2");
        assert!(gcd(&x.add(&y), &x.sub(&y)).is_one());
    }

    #[test]
    fn gcd_of_dense_trivariates() {
        let p = |s: &str| RationalFunction::parse(s, &["x1", "x2", "x3"]).unwrap().numerator().clone();
        let a = p("2*x1*x2^2*x3+x1^2*x2+1");
        let b = p("-3*x1*x2^2*x3+3*x1^2*x3+1");
        let c = p("x1^2*x2^2-2*x1*x2^2+2*x1*x2*x3-1");
        let d = p("x1*x2*x3+x1+x2^2");
        assert!(gcd(&a, &b).is_one());
        assert_eq!(gcd(&a.mul(&c).mul(&d), &b.mul(&c).mul(&c)), c.monic());
        assert_eq!(gcd(&a.mul(&c).mul(&v("x2")), &c.mul(&d).mul(&v("x2")).mul(&v("x1"))), c.mul(&v("x2")).monic());
    }

    #[test]
    fn display_is_compact() {
        let x = v("x1");
        let p = x.mul(&x).scale(&BigRational::new(3.into(), 2.into())).sub(&Poly::integer(1));
        assert_eq!(p.to_string(), "3/2*x1^2-1");
    }
}
