use std::collections::BTreeSet;
use std::ops::{ControlFlow, Range};

use super::{same_algebra, ModuleHom, RightModule, Submodule};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};

/// External direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: RightModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
    /// Coordinate range of each summand.
    pub blocks: Vec<Range<usize>>,
}

impl DirectSum {
    pub fn new(parts: &[&RightModule]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidModule("empty direct sum".into()))?;
        if parts.iter().any(|m| !same_algebra(m.algebra(), first.algebra())) {
            return Err(Error::MixedAlgebras);
        }
        let algebra = first.algebra().clone();
        let f = algebra.field();
        let dim: usize = parts.iter().map(|m| m.dim()).sum();
        let action = (0..algebra.dim())
            .map(|a| {
                let blocks: Vec<&Mat> = parts.iter().map(|m| &m.action()[a]).collect();
                Mat::block_diag(f, &blocks)
            })
            .collect();
        let mut blocks = Vec::new();
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut start = 0;
        for m in parts {
            let range = start..start + m.dim();
            let mut inj = Mat::zeros(f, m.dim(), dim);
            for (i, c) in range.clone().enumerate() {
                inj.set(i, c, 1);
            }
            projections.push(ModuleHom::new(inj.transpose()));
            injections.push(ModuleHom::new(inj));
            blocks.push(range);
            start += m.dim();
        }
        Ok(Self { module: RightModule::new_unchecked(algebra, dim, action), injections, projections, blocks })
    }
}

fn is_idempotent(e: &Mat) -> bool {
    e.mul(e) == *e
}

impl RightModule {
    /// Every idempotent endomorphism, in enumeration order.
    pub fn idempotent_endos(&self, caps: &Caps) -> Result<Vec<ModuleHom>> {
        let end = self.end_space()?;
        let mut out = Vec::new();
        let _ = end.for_each::<()>(caps, |e| {
            if is_idempotent(e) {
                out.push(ModuleHom::new(e.clone()));
            }
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// All direct summands (images of idempotent endomorphisms), sorted and deduplicated.
    pub fn summands(&self, caps: &Caps) -> Result<Vec<Submodule>> {
        let set: BTreeSet<Submodule> =
            self.idempotent_endos(caps)?.iter().map(|e| Submodule(self.image(e))).collect();
        Ok(set.into_iter().collect())
    }

    /// The first idempotent in enumeration order other than 0 and 1, if any.
    pub fn nontrivial_idempotent(&self, caps: &Caps) -> Result<Option<Mat>> {
        let end = self.end_space()?;
        let id = Mat::identity(self.field(), self.dim());
        let found = end.for_each(caps, |e| {
            if !e.is_zero() && *e != id && is_idempotent(e) {
                ControlFlow::Break(e.clone())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(match found {
            ControlFlow::Break(e) => Some(e),
            ControlFlow::Continue(()) => None,
        })
    }

    pub fn is_indecomposable(&self, caps: &Caps) -> Result<bool> {
        Ok(self.dim() > 0 && self.nontrivial_idempotent(caps)?.is_none())
    }

    /// Splits into indecomposable summands `im(e) ⊕ im(1-e)`, recursively.
    pub fn decompose_indecomposable(&self, caps: &Caps) -> Result<Vec<RightModule>> {
        if self.dim() == 0 {
            return Ok(Vec::new());
        }
        let Some(e) = self.nontrivial_idempotent(caps)? else {
            return Ok(vec![self.clone()]);
        };
        let complement = Mat::identity(self.field(), self.dim()).sub(&e);
        let mut out = Vec::new();
        for proj in [e, complement] {
            let part = self.restrict(&Submodule(Subspace::from_mat(proj)));
            out.extend(part.decompose_indecomposable(caps)?);
        }
        Ok(out)
    }
}
