//! K3 lattices and the non-isogenous families built from them.

mod families;
mod form_in_basis;
mod lattice;

pub use families::*;
pub use form_in_basis::{form_in_basis_check, form_in_basis_report, FormInBasisReport};
pub use lattice::*;
