//! Lie algebroid presentations on a single chart.

use crate::coeff::{RationalFunction, Var};
use crate::error::{Error, Result};
use crate::report::{Clause, ClauseClass, Report};

use super::endo::Endo;
use super::section::{index_tuples, GradedSection, Variance};

type RF = RationalFunction;

/// A vector bundle A → U ⊂ R^n with frame e_1..e_r, anchor
/// ρ(e_i) = Σ_a anchor[i][a] ∂_a and bracket [e_i, e_j] = Σ_k c_ij^k e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebroid {
    coords: Vec<Var>,
    rank: usize,
    anchor: Vec<Vec<RF>>,
    structure: Vec<Vec<Vec<RF>>>,
}

impl Algebroid {
    /// Builds a presentation from the anchor matrix (rank × n) and the full
    /// structure table `c[i][j][k]`, which must be antisymmetric in (i, j).
    pub fn new(coords: Vec<Var>, anchor: Vec<Vec<RF>>, structure: Vec<Vec<Vec<RF>>>) -> Result<Self> {
        let rank = anchor.len();
        let n = coords.len();
        if rank == 0 {
            return Err(Error::MalformedPresentation("rank must be at least 1".into()));
        }
        if anchor.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedPresentation(format!(
                "anchor rows must have {n} entries"
            )));
        }
        if structure.len() != rank
            || structure
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|c| c.len() != rank))
        {
            return Err(Error::MalformedPresentation(format!(
                "structure table must be {rank}x{rank}x{rank}"
            )));
        }
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    if structure[i][j][k] != -&structure[j][i][k] {
                        return Err(Error::MalformedPresentation(format!(
                            "structure functions not antisymmetric at ({},{};{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for c in &coords {
            if !seen.insert(c.clone()) {
                return Err(Error::MalformedPresentation(format!("duplicate coordinate {c}")));
            }
        }
        let vars: std::collections::BTreeSet<Var> = anchor
            .iter()
            .flatten()
            .chain(structure.iter().flatten().flatten())
            .flat_map(|f| f.vars())
            .collect();
        if let Some(v) = vars.iter().find(|v| !coords.contains(v)) {
            return Err(Error::UnknownCoordinate(v.to_string()));
        }
        Ok(Algebroid {
            coords,
            rank,
            anchor,
            structure,
        })
    }

    /// Builds from the upper triangle: entries `(i, j, k, c)` with i < j mean
    /// c_ij^k = c; the rest follows by antisymmetry.
    pub fn from_upper(
        coords: Vec<Var>,
        anchor: Vec<Vec<RF>>,
        entries: impl IntoIterator<Item = (usize, usize, usize, RF)>,
    ) -> Result<Self> {
        let r = anchor.len();
        let mut c = vec![vec![vec![RF::zero(); r]; r]; r];
        for (i, j, k, v) in entries {
            if i >= r || j >= r || k >= r || i == j {
                return Err(Error::MalformedPresentation(format!(
                    "bad structure index ({},{};{})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            c[i][j][k] = &c[i][j][k] + &v;
            c[j][i][k] = -&c[i][j][k];
        }
        Self::new(coords, anchor, c)
    }

    pub fn coords_from(names: &[&str]) -> Vec<Var> {
        names.iter().map(|s| Var::from(*s)).collect()
    }

    /// The tangent algebroid of R^n in the coordinate frame.
    pub fn tangent(coords: Vec<Var>) -> Self {
        let n = coords.len();
        let anchor = (0..n)
            .map(|i| (0..n).map(|a| if a == i { RF::one() } else { RF::zero() }).collect())
            .collect();
        Self::new(coords, anchor, vec![vec![vec![RF::zero(); n]; n]; n]).expect("tangent bundle")
    }

    /// A Lie algebra (base a point) from its structure constants.
    pub fn lie_algebra(rank: usize, entries: impl IntoIterator<Item = (usize, usize, usize, RF)>) -> Result<Self> {
        Self::from_upper(Vec::new(), vec![Vec::new(); rank], entries)
    }

    /// Zero anchor and zero bracket.
    pub fn null(coords: Vec<Var>, rank: usize) -> Self {
        let n = coords.len();
        Self::new(
            coords,
            vec![vec![RF::zero(); n]; rank],
            vec![vec![vec![RF::zero(); rank]; rank]; rank],
        )
        .expect("null algebroid")
    }

    /// Recovers anchor and bracket from a degree-one derivation `d` of ∧A*:
    /// ρ(e_i)x_a = (dx_a)_i and c_ij^k = −(dε^k)_ij.
    pub fn from_differential(
        coords: Vec<Var>,
        rank: usize,
        d: impl Fn(&GradedSection) -> GradedSection,
    ) -> Result<Self> {
        let anchor_t: Vec<GradedSection> = coords
            .iter()
            .map(|x| d(&GradedSection::scalar(Variance::Form, rank, RF::var(x))))
            .collect();
        let anchor = (0..rank)
            .map(|i| anchor_t.iter().map(|dx| dx.get(&[i])).collect())
            .collect();
        let mut c = vec![vec![vec![RF::zero(); rank]; rank]; rank];
        for k in 0..rank {
            let de = d(&GradedSection::basis(Variance::Form, rank, &[k]));
            for i in 0..rank {
                for j in 0..rank {
                    c[i][j][k] = -de.component(&[i, j]);
                }
            }
        }
        Self::new(coords, anchor, c)
    }

    /// The product algebroid over the product chart; `other`'s frame comes
    /// after this one's. Coordinate names must be disjoint.
    pub fn product(&self, other: &Algebroid) -> Result<Algebroid> {
        let (r1, r2) = (self.rank, other.rank);
        let (n1, n2) = (self.base_dim(), other.base_dim());
        let r = r1 + r2;
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        let mut anchor = vec![vec![RF::zero(); n1 + n2]; r];
        let mut c = vec![vec![vec![RF::zero(); r]; r]; r];
        for i in 0..r1 {
            anchor[i][..n1].clone_from_slice(&self.anchor[i]);
            for j in 0..r1 {
                for k in 0..r1 {
                    c[i][j][k] = self.structure[i][j][k].clone();
                }
            }
        }
        for i in 0..r2 {
            anchor[r1 + i][n1..].clone_from_slice(&other.anchor[i]);
            for j in 0..r2 {
                for k in 0..r2 {
                    c[r1 + i][r1 + j][r1 + k] = other.structure[i][j][k].clone();
                }
            }
        }
        Algebroid::new(coords, anchor, c)
    }

    /// The same presentation with coordinates renamed by `map`.
    pub fn renamed(&self, map: &std::collections::HashMap<Var, Var>) -> Algebroid {
        let subst: std::collections::HashMap<Var, RF> =
            map.iter().map(|(a, b)| (a.clone(), RF::var(b))).collect();
        let f = |x: &RF| x.substitute(&subst).expect("renaming keeps denominators");
        Algebroid {
            coords: self.coords.iter().map(|c| map.get(c).cloned().unwrap_or_else(|| c.clone())).collect(),
            rank: self.rank,
            anchor: self.anchor.iter().map(|row| row.iter().map(f).collect()).collect(),
            structure: self
                .structure
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(f).collect()).collect())
                .collect(),
        }
    }

    /// Negated anchor and bracket.
    pub fn negated(&self) -> Algebroid {
        Algebroid {
            coords: self.coords.clone(),
            rank: self.rank,
            anchor: self.anchor.iter().map(|row| row.iter().map(|x| -x).collect()).collect(),
            structure: self
                .structure
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|x| -x).collect()).collect())
                .collect(),
        }
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn base_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn anchor_entry(&self, i: usize, a: usize) -> &RF {
        &self.anchor[i][a]
    }

    pub fn anchor_matrix(&self) -> &[Vec<RF>] {
        &self.anchor
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &RF {
        &self.structure[i][j][k]
    }

    pub fn structure_table(&self) -> &[Vec<Vec<RF>>] {
        &self.structure
    }

    pub fn zero_vector(&self) -> GradedSection {
        GradedSection::zero(Variance::Multivector, self.rank, 1)
    }

    pub fn frame(&self, i: usize) -> GradedSection {
        GradedSection::basis(Variance::Multivector, self.rank, &[i])
    }

    pub fn coframe(&self, i: usize) -> GradedSection {
        GradedSection::basis(Variance::Form, self.rank, &[i])
    }

    pub fn function(&self, variance: Variance, f: RF) -> GradedSection {
        GradedSection::scalar(variance, self.rank, f)
    }

    pub fn coordinate(&self, a: usize) -> RF {
        RF::var(&self.coords[a])
    }

    /// ρ(e_i) f.
    pub fn rho_frame(&self, i: usize, f: &RF) -> RF {
        if f.is_constant() {
            return RF::zero();
        }
        let mut acc = RF::zero();
        for (a, x) in self.coords.iter().enumerate() {
            let c = &self.anchor[i][a];
            if c.is_zero() || !f.contains_var(x) {
                continue;
            }
            acc = &acc + &(c * &f.differentiate(x));
        }
        acc
    }

    /// ρ(X) f for a section X of A.
    pub fn rho(&self, x: &GradedSection, f: &RF) -> RF {
        debug_assert_eq!(x.degree(), 1);
        let mut acc = RF::zero();
        for (idx, c) in x.terms() {
            let d = self.rho_frame(idx[0], f);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// The anchor image ρ(X) as a vector field, by components in ∂_a.
    pub fn anchor_of(&self, x: &GradedSection) -> Vec<RF> {
        (0..self.base_dim())
            .map(|a| x.terms().map(|(idx, c)| c * &self.anchor[idx[0]][a]).sum())
            .collect()
    }

    pub fn frame_bracket(&self, i: usize, j: usize) -> GradedSection {
        let mut out = self.zero_vector();
        for k in 0..self.rank {
            out.set(&[k], self.structure[i][j][k].clone());
        }
        out
    }

    /// [X, Y] for sections of A.
    pub fn bracket(&self, x: &GradedSection, y: &GradedSection) -> GradedSection {
        let mut out = self.zero_vector();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let (i, j) = (i[0], j[0]);
                if i != j {
                    let ab = a * b;
                    for k in 0..self.rank {
                        let c = &self.structure[i][j][k];
                        if !c.is_zero() {
                            out.add_to(&[k], &(&ab * c));
                        }
                    }
                }
                let rb = self.rho_frame(i, b);
                if !rb.is_zero() {
                    out.add_to(&[j], &(a * &rb));
                }
                let ra = self.rho_frame(j, a);
                if !ra.is_zero() {
                    out.add_to(&[i], &-(b * &ra));
                }
            }
        }
        out
    }

    /// The algebroid differential on forms (Cartan formula).
    pub fn differential(&self, mu: &GradedSection) -> GradedSection {
        assert_eq!(mu.variance(), Variance::Form, "d acts on forms");
        let k = mu.degree();
        let r = self.rank;
        let mut out = GradedSection::zero(Variance::Form, r, k + 1);
        if k + 1 > r {
            return out;
        }
        for idx in index_tuples(r, k + 1) {
            let mut acc = RF::zero();
            for l in 0..=k {
                let rest: Vec<usize> = idx.iter().enumerate().filter(|&(p, _)| p != l).map(|(_, &v)| v).collect();
                let d = self.rho_frame(idx[l], &mu.get(&rest));
                if !d.is_zero() {
                    acc = if l % 2 == 0 { &acc + &d } else { &acc - &d };
                }
            }
            for l in 0..=k {
                for m in l + 1..=k {
                    let rest: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != l && p != m)
                        .map(|(_, &v)| v)
                        .collect();
                    let mut t = RF::zero();
                    for s in 0..r {
                        let c = &self.structure[idx[l]][idx[m]][s];
                        if c.is_zero() {
                            continue;
                        }
                        let mut args = vec![s];
                        args.extend_from_slice(&rest);
                        let v = mu.component(&args);
                        if !v.is_zero() {
                            t = &t + &(c * &v);
                        }
                    }
                    if !t.is_zero() {
                        acc = if (l + m) % 2 == 0 { &acc + &t } else { &acc - &t };
                    }
                }
            }
            out.set(&idx, acc);
        }
        out
    }

    fn decomposable(&self, idx: &[usize], c: &RF) -> Vec<GradedSection> {
        idx.iter()
            .enumerate()
            .map(|(p, &i)| {
                let e = self.frame(i);
                if p == 0 {
                    e.scale(c)
                } else {
                    e
                }
            })
            .collect()
    }

    fn wedge_all(&self, parts: &[&GradedSection]) -> GradedSection {
        let mut w = self.function(Variance::Multivector, RF::one());
        for p in parts {
            w = w.wedge(p);
        }
        w
    }

    /// [X1∧…∧Xp, g] = Σ (−1)^{p−i} ρ(Xi)(g) X1∧…X̂i…∧Xp.
    fn schouten_with_function(&self, xs: &[GradedSection], g: &RF) -> GradedSection {
        let p = xs.len();
        let mut out = GradedSection::zero(Variance::Multivector, self.rank, p - 1);
        for i in 0..p {
            let d = self.rho(&xs[i], g);
            if d.is_zero() {
                continue;
            }
            let rest: Vec<&GradedSection> = xs.iter().enumerate().filter(|&(q, _)| q != i).map(|(_, x)| x).collect();
            let term = self.wedge_all(&rest).scale(&d);
            out = if (p - 1 - i) % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// The Schouten–Nijenhuis bracket of multivectors.
    pub fn schouten(&self, p: &GradedSection, q: &GradedSection) -> GradedSection {
        assert_eq!(p.variance(), Variance::Multivector);
        assert_eq!(q.variance(), Variance::Multivector);
        let (dp, dq) = (p.degree(), q.degree());
        if dp == 0 && dq == 0 {
            return GradedSection::zero(Variance::Multivector, self.rank, 0);
        }
        let deg = dp + dq - 1;
        let mut out = GradedSection::zero(Variance::Multivector, self.rank, deg);
        if deg > self.rank {
            return out;
        }
        if dq == 0 {
            let g = q.scalar_value();
            for (idx, c) in p.terms() {
                out = out.add(&self.schouten_with_function(&self.decomposable(idx, c), &g));
            }
            return out;
        }
        if dp == 0 {
            let r = self.schouten(q, p);
            return if dq % 2 == 0 { r } else { r.neg() };
        }
        for (ii, a) in p.terms() {
            let xs = self.decomposable(ii, a);
            for (jj, b) in q.terms() {
                let ys = self.decomposable(jj, b);
                for i in 0..dp {
                    for j in 0..dq {
                        let br = self.bracket(&xs[i], &ys[j]);
                        if br.is_zero() {
                            continue;
                        }
                        let mut parts: Vec<&GradedSection> = vec![&br];
                        parts.extend(xs.iter().enumerate().filter(|&(s, _)| s != i).map(|(_, x)| x));
                        parts.extend(ys.iter().enumerate().filter(|&(s, _)| s != j).map(|(_, y)| y));
                        let term = self.wedge_all(&parts);
                        out = if (i + j) % 2 == 0 { out.add(&term) } else { out.sub(&term) };
                    }
                }
            }
        }
        out
    }

    /// L_X on forms (i_X d + d i_X) or on multivectors ([X, −]).
    pub fn lie_derivative(&self, x: &GradedSection, mu: &GradedSection) -> GradedSection {
        assert_eq!(x.degree(), 1);
        match mu.variance() {
            Variance::Multivector => self.schouten(x, mu),
            Variance::Form => {
                if mu.degree() == 0 {
                    return self.function(Variance::Form, self.rho(x, &mu.scalar_value()));
                }
                let a = x.insert_into(&self.differential(mu));
                let b = self.differential(&x.insert_into(mu));
                a.add(&b)
            }
        }
    }

    /// Jacobi identity per frame triple and anchor compatibility per pair.
    pub fn check_axioms(&self) -> Report {
        let r = self.rank;
        let mut clauses = Vec::new();
        for t in index_tuples(r, 3) {
            let (i, j, k) = (t[0], t[1], t[2]);
            let (ei, ej, ek) = (self.frame(i), self.frame(j), self.frame(k));
            let jac = self
                .bracket(&self.bracket(&ei, &ej), &ek)
                .add(&self.bracket(&self.bracket(&ej, &ek), &ei))
                .add(&self.bracket(&self.bracket(&ek, &ei), &ej));
            clauses.push(vector_clause(
                format!("jacobi({},{},{})", i + 1, j + 1, k + 1),
                ClauseClass::ProofTensorial,
                &jac,
                "e",
            ));
        }
        for t in index_tuples(r, 2) {
            let (i, j) = (t[0], t[1]);
            let lhs = self.anchor_of(&self.frame_bracket(i, j));
            let res: Vec<(String, RF)> = (0..self.base_dim())
                .map(|a| {
                    let rhs = &self.rho_frame(i, &self.anchor[j][a]) - &self.rho_frame(j, &self.anchor[i][a]);
                    (format!("d{}", self.coords[a]), &lhs[a] - &rhs)
                })
                .collect();
            clauses.push(Clause::components(
                format!("anchor({},{})", i + 1, j + 1),
                ClauseClass::ProofTensorial,
                res.iter().map(|(l, v)| (l.clone(), v)),
            ));
        }
        Report::from_clauses("check-axioms", clauses)
    }

    /// d² = 0 on coordinate functions and coframe 1-forms.
    pub fn check_d_squared(&self) -> Report {
        let mut clauses = Vec::new();
        for a in 0..self.base_dim() {
            let f = self.function(Variance::Form, self.coordinate(a));
            let dd = self.differential(&self.differential(&f));
            clauses.push(form_clause(format!("d2({})", self.coords[a]), &dd));
        }
        for k in 0..self.rank {
            let dd = self.differential(&self.differential(&self.coframe(k)));
            clauses.push(form_clause(format!("d2(E{})", k + 1), &dd));
        }
        Report::from_clauses("check-d-squared", clauses)
    }

    /// The algebroid with bracket [X,Y]_N = [NX,Y] + [X,NY] − N[X,Y] and
    /// anchor ρ∘N.
    pub fn deformed_by(&self, n: &Endo) -> Result<Algebroid> {
        if n.rank() != self.rank {
            return Err(Error::MalformedPresentation(format!(
                "endomorphism of rank {} on algebroid of rank {}",
                n.rank(),
                self.rank
            )));
        }
        let r = self.rank;
        let anchor = (0..r)
            .map(|i| self.anchor_of(&n.apply(&self.frame(i))))
            .collect();
        let mut c = vec![vec![vec![RF::zero(); r]; r]; r];
        for i in 0..r {
            for j in 0..r {
                let b = self.deformed_bracket(n, &self.frame(i), &self.frame(j));
                for k in 0..r {
                    c[i][j][k] = b.get(&[k]);
                }
            }
        }
        Algebroid::new(self.coords.clone(), anchor, c)
    }

    pub fn deformed_bracket(&self, n: &Endo, x: &GradedSection, y: &GradedSection) -> GradedSection {
        self.bracket(&n.apply(x), y)
            .add(&self.bracket(x, &n.apply(y)))
            .sub(&n.apply(&self.bracket(x, y)))
    }
}

pub(crate) fn vector_clause(name: String, class: ClauseClass, v: &GradedSection, sym: &str) -> Clause {
    let parts: Vec<(String, RF)> = v
        .terms()
        .map(|(idx, c)| {
            let label: Vec<String> = idx.iter().map(|i| format!("{sym}{}", i + 1)).collect();
            (label.join("^"), c.clone())
        })
        .collect();
    Clause::components(name, class, parts.iter().map(|(l, c)| (l.clone(), c)))
}

pub(crate) fn form_clause(name: String, v: &GradedSection) -> Clause {
    let sym = match v.variance() {
        Variance::Form => "E",
        Variance::Multivector => "e",
    };
    vector_clause(name, ClauseClass::ProofGenerators, v, sym)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3(corrupt: bool) -> Algebroid {
        let one = RF::one();
        let c31 = if corrupt { (2, 0, 0) } else { (2, 0, 1) };
        Algebroid::lie_algebra(
            3,
            vec![
                (0, 1, 2, one.clone()),
                (1, 2, 0, one.clone()),
                (c31.0, c31.1, c31.2, one),
            ],
        )
        .unwrap()
    }

    fn tr(n: usize) -> Algebroid {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        Algebroid::tangent(names.iter().map(|s| Var::from(s.as_str())).collect())
    }

    fn x(i: usize) -> RF {
        RF::var(&format!("x{i}"))
    }

    #[test]
    fn so3_axioms() {
        assert!(so3(false).check_axioms().passed());
        let bad = so3(true).check_axioms();
        assert!(!bad.passed());
        let c = bad.clause("jacobi(1,2,3)").unwrap();
        assert_eq!(c.residue, "e3:1");
        assert!(tr(2).check_axioms().passed());
    }

    #[test]
    fn differential_examples() {
        let a = tr(2);
        let dx1 = a.differential(&a.function(Variance::Form, x(1)));
        assert_eq!(dx1, a.coframe(0));
        let b = tr(3);
        let mu = b.coframe(0).wedge(&b.coframe(1)).scale(&x(3));
        let expected = b.coframe(2).wedge(&b.coframe(0)).wedge(&b.coframe(1));
        assert_eq!(b.differential(&mu), expected);
        let g = so3(false);
        let de3 = g.differential(&g.coframe(2));
        assert_eq!(de3, g.coframe(0).wedge(&g.coframe(1)).neg());
    }

    #[test]
    fn schouten_examples() {
        let a = tr(2);
        let d1 = a.frame(0);
        let x1d2 = a.frame(1).scale(&x(1));
        assert_eq!(a.schouten(&d1, &x1d2), a.frame(1));
        let pi = a.frame(0).wedge(&a.frame(1));
        assert!(a.schouten(&pi, &pi).is_zero());
        let g = so3(false);
        assert_eq!(g.schouten(&g.frame(0), &g.frame(1)), g.frame(2));
    }

    #[test]
    fn lie_derivative_examples() {
        let a = tr(2);
        let mu = a.coframe(1).scale(&x(1));
        assert_eq!(a.lie_derivative(&a.frame(0), &mu), a.coframe(1));
        assert!(a.lie_derivative(&a.frame(1), &a.coframe(0)).is_zero());
        let g = so3(false);
        assert_eq!(g.lie_derivative(&g.frame(0), &g.coframe(1)), g.coframe(2));
    }

    #[test]
    fn from_differential_round_trip() {
        let g = so3(false);
        let h = Algebroid::from_differential(Vec::new(), 3, |m| g.differential(m)).unwrap();
        assert_eq!(g, h);
        let a = Algebroid::from_upper(
            Algebroid::coords_from(&["x1", "x2"]),
            vec![vec![x(1), RF::zero()], vec![RF::zero(), x(2)]],
            vec![(0, 1, 1, x(1))],
        );
        let a = a.unwrap();
        let b = Algebroid::from_differential(a.coords().to_vec(), 2, |m| a.differential(m)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_shapes() {
        let r = Algebroid::new(Algebroid::coords_from(&["x1"]), vec![vec![]], vec![vec![vec![RF::zero()]]]);
        assert!(matches!(r, Err(Error::MalformedPresentation(_))));
    }
}
