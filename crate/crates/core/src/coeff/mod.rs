//! Exact coefficient field: rational functions over Q in named coordinates.

pub mod poly;
pub mod rational;

pub use poly::{gcd, Monomial, Poly, Var};
pub use rational::RationalFunction;
