//! Graded Frobenius algebra models of cohomology rings and maps between them.

mod abelian;
mod algebra;
mod axioms;
mod maps;
mod models;
mod projectors;

pub use abelian::*;
pub use algebra::{mode_product_all, GradedFrobeniusAlgebra, ModelDescriptor, ModelKind, Tensor3, Vector};
pub use axioms::*;
pub use maps::*;
pub use models::*;
pub use projectors::*;

#[cfg(test)]
mod tests;
