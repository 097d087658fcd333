//! Decision procedures for finite modules over basic algebras over GF(p).

pub mod algebra;
mod caps;
pub mod envelope;
mod error;
pub mod linalg;
pub mod modules;
pub mod report;
pub mod theorems;

pub use algebra::{FiniteAlgebra, Label, PosetPattern, RingSpec};
pub use caps::Caps;
pub use envelope::{InjectiveHull, PropertyProfile};
pub use error::{Error, Result};
pub use linalg::{Elem, Mat, PrimeField, Subspace};
pub use modules::{ModuleHom, ModuleScript, RightModule, Submodule};
