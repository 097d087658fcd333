use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use std::sync::Arc;

use super::{Multiset, RightModule, Submodule};
use crate::algebra::FiniteAlgebra;
use crate::caps::Caps;
use crate::error::Result;
use crate::linalg::Mat;

/// Every indecomposable projective right module `e_ii·A` is uniserial.
pub fn is_right_serial(algebra: &Arc<FiniteAlgebra>) -> bool {
    algebra.simple_labels().into_iter().all(|v| RightModule::projective(algebra, v).is_ok_and(|p| p.is_uniserial()))
}

/// Every indecomposable projective left module `A·e_ii` is uniserial.
pub fn is_left_serial(algebra: &Arc<FiniteAlgebra>) -> bool {
    is_right_serial(&algebra.opposite())
}

/// Isomorphism invariants used to reject non-isomorphic pairs before any enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub dim: usize,
    pub radical_dims: Vec<usize>,
    pub socle_dims: Vec<usize>,
    pub factors: Multiset,
    pub socle_labels: Multiset,
    pub top_labels: Multiset,
}

impl RightModule {
    pub fn invariants(&self) -> ModuleInvariants {
        ModuleInvariants {
            dim: self.dim(),
            radical_dims: self.radical_series_dims(),
            socle_dims: self.socle_series().iter().map(Submodule::dim).collect(),
            factors: self.composition_factors(),
            socle_labels: self.socle_labels(),
            top_labels: self.top_labels(),
        }
    }

    /// An isomorphism `self → other` if one exists: the first invertible element of
    /// `Hom(self, other)` in enumeration order.
    pub fn is_isomorphic(&self, other: &RightModule, caps: &Caps) -> Result<Option<Mat>> {
        if self.dim() != other.dim() {
            return Ok(None);
        }
        self.isomorphism_unfiltered(other, caps, self.invariants() == other.invariants())
    }

    /// Isomorphism search for callers that already compared invariants.
    pub(crate) fn isomorphism_unfiltered(&self, other: &RightModule, caps: &Caps, invariants_match: bool) -> Result<Option<Mat>> {
        if !invariants_match {
            return Ok(None);
        }
        let hom = self.hom_space(other)?;
        if hom.dim() != self.end_space()?.dim() {
            return Ok(None);
        }
        let found = hom.for_each(caps, |h| {
            if h.rank() == h.rows() {
                ControlFlow::Break(h.clone())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(match found {
            ControlFlow::Break(h) => Some(h),
            ControlFlow::Continue(()) => None,
        })
    }

    pub fn is_simple(&self) -> bool {
        self.dim() > 0 && self.radical().is_zero() && self.socle().dim() == 1
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().is_zero()
    }

    /// `M/rad(M)` is simple.
    pub fn is_local(&self) -> bool {
        self.dim() - self.radical().dim() == 1
    }

    /// `Soc(M)` is simple.
    pub fn is_uniform(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Every radical layer is simple or zero.
    pub fn is_uniserial(&self) -> bool {
        self.radical_series_dims().windows(2).all(|w| w[0] - w[1] <= 1)
    }

    /// `Soc(M) ⊆ N`.
    pub fn is_essential(&self, sub: &Submodule) -> bool {
        self.socle().is_subset(sub)
    }

    pub fn socle_square_free(&self) -> bool {
        self.socle_labels().is_square_free()
    }

    /// Lattice form of uniseriality: all submodules are pairwise comparable.
    pub fn is_uniserial_by_lattice(&self, caps: &Caps) -> Result<bool> {
        let lattice = self.submodule_lattice(caps)?;
        Ok(lattice.iter().all(|a| lattice.iter().all(|b| a.is_subset(b) || b.is_subset(a))))
    }

    /// Lattice form of uniformity: any two nonzero submodules intersect nontrivially.
    pub fn is_uniform_by_lattice(&self, caps: &Caps) -> Result<bool> {
        let lattice = self.submodule_lattice(caps)?;
        let nonzero: Vec<&Submodule> = lattice.iter().filter(|s| !s.is_zero()).collect();
        Ok(!nonzero.is_empty() && nonzero.iter().all(|a| nonzero.iter().all(|b| !a.intersect(b).is_zero())))
    }
}
