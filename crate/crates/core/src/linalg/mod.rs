//! Exact linear algebra over prime fields.

mod enumerate;
mod field;
mod mat;
mod subspace;

pub use enumerate::for_each_combination;
pub use field::{Elem, PrimeField, MAX_PRIME};
pub use mat::{Mat, Rref, Solution};
pub use subspace::Subspace;
