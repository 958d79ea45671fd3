//! Seeded random sections used for sampled identity checks.

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::{GradedSection, Variance};
use crate::coeff::{Monomial, Poly, RationalFunction, Var};
use crate::report::FamilyParams;

impl FamilyParams {
    pub const DEFAULT_SEED: u64 = 20240611;

    pub fn new(seed: u64, samples: usize, max_degree: u32) -> Self {
        FamilyParams {
            seed,
            samples,
            max_degree,
        }
    }

    /// A generator for the `stream`-th independent sequence of this family.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams::new(Self::DEFAULT_SEED, 10, 2)
    }
}

/// A polynomial with up to three terms, small integer coefficients and
/// total degree at most `max_degree`.
pub fn random_function(rng: &mut impl Rng, coords: &[Var], max_degree: u32) -> RationalFunction {
    let mut p = Poly::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let c: i64 = loop {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        let mut pairs = Vec::new();
        if !coords.is_empty() {
            let deg = rng.gen_range(0..=max_degree);
            for _ in 0..deg {
                let v = coords[rng.gen_range(0..coords.len())].clone();
                pairs.push((v, 1));
            }
        }
        p = p.add(&Poly::term(BigRational::from_integer(c.into()), Monomial::from_pairs(pairs)));
    }
    RationalFunction::from_poly(p)
}

/// A degree-`degree` section whose coefficients are [`random_function`]s;
/// each coefficient is zero with probability 1/4.
pub fn random_section(
    rng: &mut impl Rng,
    variance: Variance,
    rank: usize,
    degree: usize,
    coords: &[Var],
    max_degree: u32,
) -> GradedSection {
    GradedSection::from_fn(variance, rank, degree, |_| {
        if rng.gen_range(0..4) == 0 {
            RationalFunction::zero()
        } else {
            random_function(rng, coords, max_degree)
        }
    })
}

/// Frame sections, then coordinate-scaled frame sections x_a·e_i.
pub fn deterministic_vectors(variance: Variance, rank: usize, coords: &[Var]) -> Vec<GradedSection> {
    let mut out: Vec<GradedSection> = (0..rank).map(|i| GradedSection::basis(variance, rank, &[i])).collect();
    for x in coords {
        for i in 0..rank {
            out.push(GradedSection::basis(variance, rank, &[i]).scale(&RationalFunction::var(x)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sections_are_reproducible() {
        let coords: Vec<Var> = vec!["x1".into(), "x2".into()];
        let p = FamilyParams::default();
        let a = random_section(&mut p.rng(3), Variance::Form, 3, 2, &coords, 2);
        let b = random_section(&mut p.rng(3), Variance::Form, 3, 2, &coords, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_bound_holds() {
        let coords: Vec<Var> = vec!["x1".into(), "x2".into(), "x3".into()];
        let mut rng = FamilyParams::default().rng(0);
        for _ in 0..50 {
            let f = random_function(&mut rng, &coords, 2);
            assert!(f.numerator().total_degree() <= 2);
        }
    }
}
