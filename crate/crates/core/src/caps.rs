use serde::{Deserialize, Serialize};

/// Enumeration limits. Exceeding any of them is reported as [`crate::Error::CapExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest vector set enumerated from a single subspace.
    pub vectors: u64,
    /// Largest hom space (element count) enumerated.
    pub homs: u64,
    /// Largest submodule lattice built.
    pub lattice: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self { vectors: 1 << 22, homs: 1 << 20, lattice: 1_000_000 }
    }
}
