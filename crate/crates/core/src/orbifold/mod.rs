//! Symmetric-group combinatorics and the orbifold product on symmetric powers.

mod counting;
mod perm;
mod product;

pub use counting::*;
pub use perm::*;
pub use product::*;
