//! Normalized quotients of polynomials: the scalar field for every tensor
//! coefficient in the crate.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::{gcd, Poly, Var};
use crate::error::{Error, Result};

/// `numerator / denominator` with the pair reduced by its gcd and the
/// denominator monic under graded-lex order. Two values are equal exactly
/// when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        RationalFunction::from_poly(Poly::integer(n))
    }

    pub fn constant(c: BigRational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        RationalFunction::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn var(name: &str) -> Self {
        RationalFunction::from_poly(Poly::var(&Var::from(name)))
    }

    pub fn from_poly(num: Poly) -> Self {
        RationalFunction {
            num,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` and normalizes it.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    fn normalized_coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let inv = den.leading_coefficient().recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Re-normalizes; a no-op on values produced by this module.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.recip_unchecked())
    }

    fn recip_unchecked(&self) -> RationalFunction {
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    pub fn pow(&self, e: i32) -> Result<RationalFunction> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = e as u32;
        Ok(RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn scale_int(&self, k: i64) -> RationalFunction {
        if k == 0 {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(&BigRational::from_integer(BigInt::from(k))),
            den: self.den.clone(),
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn differentiate(&self, coord: &str) -> RationalFunction {
        if self.den.is_one() {
            return RationalFunction::from_poly(self.num.derivative(coord));
        }
        let dn = self.num.derivative(coord);
        let dd = self.den.derivative(coord);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        let mut num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let mut den = self.den.mul(&self.den);
        if gcd(&self.den, &dd).is_one() {
            return Self::normalized_coprime(num, den);
        }
        // A common factor of num and den² is a factor of den.
        loop {
            let g = gcd(&num, &self.den);
            if g.is_one() || num.is_zero() {
                return Self::normalized_coprime(num, den);
            }
            match (num.div_exact(&g), den.div_exact(&g)) {
                (Some(n), Some(d)) => (num, den) = (n, d),
                _ => return Self::normalized(num, den),
            }
        }
    }

    /// Checked variant of [`differentiate`](Self::differentiate) against a
    /// coordinate list.
    pub fn differentiate_in(&self, coord: &str, coords: &[Var]) -> Result<RationalFunction> {
        if !coords.iter().any(|c| &**c == coord) {
            return Err(Error::UnknownCoordinate(coord.to_string()));
        }
        Ok(self.differentiate(coord))
    }

    /// Simultaneous substitution. Fails when the denominator vanishes after
    /// substitution.
    pub fn substitute(&self, map: &HashMap<Var, RationalFunction>) -> Result<RationalFunction> {
        let n = self.num.substitute(map);
        if self.den.is_one() {
            return Ok(n);
        }
        let d = self.den.substitute(map);
        n.div(&d)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        RationalFunction::integer(n)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        if rhs.den.is_one() {
            let num = self.num.add(&rhs.num.mul(&self.den));
            return RationalFunction::normalized(num, self.den.clone());
        }
        if self.den.is_one() {
            let num = rhs.num.add(&self.num.mul(&rhs.den));
            return RationalFunction::normalized(num, rhs.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (sd, rd) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = self.num.mul(&rd).add(&rhs.num.mul(&sd));
        if g.is_one() {
            return RationalFunction::normalized_coprime(num, sd.mul(&rd));
        }
        // Only factors of g can cancel.
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        RationalFunction::normalized_coprime(num, g.mul(&sd).mul(&rd))
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(self.num.mul(&rhs.num));
        }
        if let Some(c) = self.constant_value() {
            return RationalFunction {
                num: rhs.num.scale(&c),
                den: rhs.den.clone(),
            };
        }
        if let Some(c) = rhs.constant_value() {
            return RationalFunction {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        // Cross-cancel so the product of reduced fractions stays reduced.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = rhs.den.div_exact(&g1).expect("gcd divides");
        let c = rhs.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        RationalFunction::normalized_coprime(a.mul(&c), b.mul(&d))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
