//! Exact computations around rational quadratic forms, K3 lattices, graded
//! Frobenius algebras and orbifold products of symmetric powers.
//!
//! Everything is computed over Q with arbitrary precision; no floating point
//! enters a verdict.

pub mod acceptance;
pub mod arith;
pub mod error;
pub mod forms;
pub mod frobenius;
pub mod k3;
pub mod linalg;
pub mod oracle;
pub mod orbifold;
pub mod rational;

pub use error::{Error, Result};
pub use rational::{q, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/k3.md")]
    mod k3 {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/orbifold.md")]
    mod orbifold {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
