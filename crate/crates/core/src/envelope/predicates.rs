use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::InjectiveHull;
use crate::caps::Caps;
use crate::error::Result;
use crate::linalg::{Elem, Mat, Subspace};
use crate::modules::{HomSpace, RightModule, Submodule};

/// Concrete evidence that a property fails. Matrices and vectors are integer rows in the
/// coordinates of the module (or of its hull, where stated).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The hull is strictly larger.
    HullLarger { module_dim: usize, hull_dim: usize },
    /// An endomorphism of the hull moves `element` (hull coordinates) out of the module.
    EndomorphismEscapes { endomorphism: Vec<Vec<i64>>, element: Vec<i64> },
    /// A monomorphism from `submodule` into the module with no extension to an endomorphism.
    UnextendableMonomorphism { submodule: Vec<Vec<i64>>, map: Vec<Vec<i64>> },
    /// A homomorphism from `submodule` of the second module that does not extend.
    UnextendableMap { submodule: Vec<Vec<i64>>, map: Vec<Vec<i64>> },
    /// A map onto `quotient_by` with no lift to an endomorphism.
    UnliftableMap { quotient_by: Vec<Vec<i64>>, map: Vec<Vec<i64>> },
    /// A submodule essential in no direct summand.
    NotEssentialInSummand { submodule: Vec<Vec<i64>> },
    /// A submodule isomorphic to `summand` that is not itself a summand.
    IsomorphicToSummand { submodule: Vec<Vec<i64>>, summand: Vec<Vec<i64>> },
    /// Two independent summands whose sum is not a summand.
    SumNotSummand { first: Vec<Vec<i64>>, second: Vec<Vec<i64>> },
    /// A structural count that rules the property out.
    Structural { reason: String },
}

/// Outcome of a predicate with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Decision {
    pub fn yes() -> Self {
        Self { holds: true, witness: None }
    }

    pub fn no(w: Witness) -> Self {
        Self { holds: false, witness: Some(w) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismCount {
    pub decision: Decision,
    pub end_size: u64,
    pub aut_size: u64,
}

fn rows(m: &Mat) -> Vec<Vec<i64>> {
    m.to_i64_rows()
}

fn vec_i64(v: &[Elem]) -> Vec<i64> {
    v.iter().map(|&x| i64::from(x)).collect()
}

fn basis_rows(s: &Submodule) -> Vec<Vec<i64>> {
    rows(s.space().basis())
}

/// Span of a set of equally shaped matrices, flattened row-major.
fn span_of(mats: impl IntoIterator<Item = Mat>, len: usize, like: &RightModule) -> Subspace {
    let flat: Vec<Vec<Elem>> = mats.into_iter().map(|m| m.data().to_vec()).collect();
    Subspace::span(like.field(), len, flat.iter().map(|v| v.as_slice()))
}

/// Image of `Hom(N, M) → Hom(N1, M)`, `h ↦ incl·h`, inside the flattened `Hom(N1, M)`.
fn restriction_image(incl: &Mat, hom: &HomSpace, like: &RightModule) -> Subspace {
    let len = incl.rows() * hom.target_dim();
    span_of(hom.basis().into_iter().map(|h| incl.mul(&h.matrix)), len, like)
}

impl InjectiveHull {
    /// First element of `M` (as a basis vector) moved outside `ι(M)` by `f`.
    fn escape(&self, f: &Mat) -> Option<Vec<Elem>> {
        let image = self.image();
        self.embedding.matrix.row_iter().map(|v| f.apply(v)).find(|w| !image.contains(w))
    }

    /// Invariance under a basis of `End(E)`, which suffices since stable maps form a subspace.
    pub fn quasi_injectivity(&self) -> Result<Decision> {
        for f in self.hull.end_space()?.basis() {
            if let Some(w) = self.escape(&f.matrix) {
                return Ok(Decision::no(Witness::EndomorphismEscapes { endomorphism: rows(&f.matrix), element: vec_i64(&w) }));
            }
        }
        Ok(Decision::yes())
    }

    /// Full sweep over the unit group of `End(E)`.
    pub fn automorphism_invariance(&self, caps: &Caps) -> Result<AutomorphismCount> {
        let end = self.hull.end_space()?;
        let mut aut_size = 0u64;
        let mut witness = None;
        let _ = end.for_each::<()>(caps, |f| {
            if f.rank() == f.rows() {
                aut_size += 1;
                if witness.is_none() {
                    if let Some(w) = self.escape(f) {
                        witness = Some(Witness::EndomorphismEscapes { endomorphism: rows(f), element: vec_i64(&w) });
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        let decision = match witness {
            Some(w) => Decision::no(w),
            None => Decision::yes(),
        };
        Ok(AutomorphismCount { decision, end_size: end.size(), aut_size })
    }
}

impl RightModule {
    pub fn injectivity(&self) -> Result<Decision> {
        let hull_dim = super::hull_dim(self)?;
        Ok(if hull_dim == self.dim() {
            Decision::yes()
        } else {
            Decision::no(Witness::HullLarger { module_dim: self.dim(), hull_dim })
        })
    }

    pub fn is_quasi_injective(&self) -> Result<Decision> {
        self.injective_hull()?.quasi_injectivity()
    }

    pub fn is_automorphism_invariant(&self, caps: &Caps) -> Result<AutomorphismCount> {
        self.injective_hull()?.automorphism_invariance(caps)
    }

    /// Every monomorphism `N → M` from a submodule extends to an endomorphism of `M`.
    pub fn is_pseudo_injective(&self, caps: &Caps) -> Result<Decision> {
        self.pseudo_injectivity_over(&self.submodule_lattice(caps)?, caps)
    }

    pub(crate) fn pseudo_injectivity_over(&self, lattice: &[Submodule], caps: &Caps) -> Result<Decision> {
        let end = self.end_space()?;
        for n in lattice.iter().filter(|n| !n.is_zero()) {
            let sub = self.restrict(n);
            let hom = sub.hom_space(self)?;
            let incl = n.space().basis();
            let reachable = restriction_image(incl, &end, self);
            if reachable.dim() == hom.dim() {
                continue;
            }
            let found = hom.for_each(caps, |f| {
                if f.rank() == f.rows() && !reachable.contains(f.data()) {
                    ControlFlow::Break(f.clone())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            if let ControlFlow::Break(f) = found {
                return Ok(Decision::no(Witness::UnextendableMonomorphism { submodule: basis_rows(n), map: rows(&f) }));
            }
        }
        Ok(Decision::yes())
    }

    /// `M` is `N`-injective: `Hom(N, M) → Hom(N1, M)` is onto for every `N1 ≤ N`.
    pub fn is_relatively_injective(&self, n: &RightModule, caps: &Caps) -> Result<Decision> {
        let whole = n.hom_space(self)?;
        for n1 in n.submodule_lattice(caps)? {
            let target = n.restrict(&n1).hom_space(self)?;
            let incl = n1.space().basis();
            let reachable = restriction_image(incl, &whole, self);
            if reachable.dim() < target.dim() {
                let map = target
                    .basis()
                    .into_iter()
                    .find(|h| !reachable.contains(h.matrix.data()))
                    .expect("a basis element escapes a proper subspace");
                return Ok(Decision::no(Witness::UnextendableMap { submodule: basis_rows(&n1), map: rows(&map.matrix) }));
            }
        }
        Ok(Decision::yes())
    }

    /// Every `M → M/C` lifts through the projection: `End(M) → Hom(M, M/C)` is onto.
    pub fn is_quasi_projective(&self, caps: &Caps) -> Result<Decision> {
        self.quasi_projectivity_over(&self.submodule_lattice(caps)?)
    }

    pub(crate) fn quasi_projectivity_over(&self, lattice: &[Submodule]) -> Result<Decision> {
        let end = self.end_space()?;
        for c in lattice {
            let (q, proj) = self.quotient(c)?;
            let target = self.hom_space(&q)?;
            let len = self.dim() * q.dim();
            let reachable = span_of(end.basis().into_iter().map(|g| g.matrix.mul(&proj.matrix)), len, self);
            if reachable.dim() < target.dim() {
                let map = target
                    .basis()
                    .into_iter()
                    .find(|h| !reachable.contains(h.matrix.data()))
                    .expect("a basis element escapes a proper subspace");
                return Ok(Decision::no(Witness::UnliftableMap { quotient_by: basis_rows(c), map: rows(&map.matrix) }));
            }
        }
        Ok(Decision::yes())
    }

    /// C1: every submodule is essential in a direct summand.
    pub fn check_c1(&self, caps: &Caps) -> Result<Decision> {
        self.c1_over(&self.submodule_lattice(caps)?, &self.summands(caps)?)
    }

    pub(crate) fn c1_over(&self, lattice: &[Submodule], summands: &[Submodule]) -> Result<Decision> {
        let soc = self.socle();
        for n in lattice {
            let ok = summands.iter().any(|d| n.is_subset(d) && soc.intersect(d).is_subset(n));
            if !ok {
                return Ok(Decision::no(Witness::NotEssentialInSummand { submodule: basis_rows(n) }));
            }
        }
        Ok(Decision::yes())
    }

    /// C2: a submodule isomorphic to a summand is a summand.
    pub fn check_c2(&self, caps: &Caps) -> Result<Decision> {
        self.c2_over(&self.submodule_lattice(caps)?, &self.summands(caps)?, caps)
    }

    pub(crate) fn c2_over(&self, lattice: &[Submodule], summands: &[Submodule], caps: &Caps) -> Result<Decision> {
        let restricted: Vec<RightModule> = summands.iter().map(|d| self.restrict(d)).collect();
        let invariants: Vec<_> = restricted.iter().map(RightModule::invariants).collect();
        for n in lattice.iter().filter(|n| summands.binary_search(n).is_err()) {
            let sub = self.restrict(n);
            let inv = sub.invariants();
            for (k, d) in restricted.iter().enumerate() {
                if d.dim() == sub.dim() && sub.isomorphism_unfiltered(d, caps, inv == invariants[k])?.is_some() {
                    return Ok(Decision::no(Witness::IsomorphicToSummand {
                        submodule: basis_rows(n),
                        summand: basis_rows(&summands[k]),
                    }));
                }
            }
        }
        Ok(Decision::yes())
    }

    /// C3: the sum of two independent summands is a summand.
    pub fn check_c3(&self, caps: &Caps) -> Result<Decision> {
        self.c3_over(&self.summands(caps)?)
    }

    pub(crate) fn c3_over(&self, summands: &[Submodule]) -> Result<Decision> {
        for (i, a) in summands.iter().enumerate() {
            for b in &summands[i + 1..] {
                if a.intersect(b).is_zero() && summands.binary_search(&a.sum(b)).is_err() {
                    return Ok(Decision::no(Witness::SumNotSummand { first: basis_rows(a), second: basis_rows(b) }));
                }
            }
        }
        Ok(Decision::yes())
    }

    /// AI through essential submodules: every isomorphism between two essential submodules
    /// extends to an endomorphism (necessarily an automorphism, its kernel missing the socle).
    pub fn is_ai_by_essential_isomorphisms(&self, caps: &Caps) -> Result<bool> {
        let end = self.end_space()?;
        let essential: Vec<Submodule> =
            self.submodule_lattice(caps)?.into_iter().filter(|n| self.is_essential(n)).collect();
        for n1 in &essential {
            let src = self.restrict(n1);
            let reachable = restriction_image(n1.space().basis(), &end, self);
            for n2 in essential.iter().filter(|n2| n2.dim() == n1.dim()) {
                let tgt = self.restrict(n2);
                let incl2 = n2.space().basis();
                let escaped = src.hom_space(&tgt)?.for_each(caps, |f| {
                    if f.rank() == f.rows() && !reachable.contains(f.mul(incl2).data()) {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })?;
                if escaped.is_break() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
