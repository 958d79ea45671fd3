//! Exact symbolic verification for Lie algebroids, Poisson quasi-Nijenhuis
//! structures, their Courant doubles and paired operators.

pub mod calculus;
pub mod coeff;
pub mod courant;
pub mod error;
pub mod family;
pub mod frontend;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod linalg;
pub mod paired;
pub mod pn;
pub mod report;
pub mod syntax;

pub use calculus::{Algebroid, BundleMorphism, Endo, GradedSection, Variance};
pub use coeff::{Poly, RationalFunction};
pub use courant::{CourantDouble, DoubleSection};
pub use error::{Error, Result};
pub use report::{Clause, ClauseClass, Report, Verdict};
