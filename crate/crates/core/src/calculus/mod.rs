//! Exterior calculus of Lie algebroids.

pub mod algebroid;
pub mod endo;
pub mod morphism;
pub mod section;

pub use algebroid::Algebroid;
pub use endo::Endo;
pub use morphism::BundleMorphism;
pub use section::{GradedSection, Variance};
