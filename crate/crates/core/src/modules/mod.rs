//! Finite right modules over a [`FiniteAlgebra`].
//!
//! Vectors are rows and the algebra acts on the right: `v · a = v · ρ(a)`, so
//! `ρ(a) · ρ(b) = ρ(ab)`. A homomorphism `M → N` is a `dim M × dim N` matrix `H`
//! with `ρ_M(a) · H = H · ρ_N(a)` for every basis element `a`.

mod decompose;
mod hom;
mod lattice;
mod predicates;
mod script;
mod singular;
mod structure;

use std::sync::Arc;

pub use decompose::DirectSum;
pub use hom::HomSpace;
pub use predicates::{is_left_serial, is_right_serial, ModuleInvariants};
pub use script::ModuleScript;
pub use structure::Multiset;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Mat, PrimeField, Subspace};

/// An action-closed subspace, in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule(pub(crate) Subspace);

impl Submodule {
    pub fn space(&self) -> &Subspace {
        &self.0
    }

    pub fn into_space(self) -> Subspace {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.0.contains(v)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.0.is_subset(&other.0).expect("submodules of one module")
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule(self.0.sum(&other.0).expect("submodules of one module"))
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        Submodule(self.0.intersect(&other.0).expect("submodules of one module"))
    }
}

/// A homomorphism given by its matrix; source and target are supplied by context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleHom {
    pub matrix: Mat,
}

impl ModuleHom {
    pub fn new(matrix: Mat) -> Self {
        Self { matrix }
    }

    pub fn is_intertwining(&self, source: &RightModule, target: &RightModule) -> bool {
        self.matrix.rows() == source.dim()
            && self.matrix.cols() == target.dim()
            && (0..source.algebra.dim())
                .all(|a| source.action[a].mul(&self.matrix) == self.matrix.mul(&target.action[a]))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.rows()
    }

    pub fn compose(&self, then: &ModuleHom) -> ModuleHom {
        ModuleHom::new(self.matrix.mul(&then.matrix))
    }
}

/// A finite right module given by one action matrix per algebra basis element.
#[derive(Clone)]
pub struct RightModule {
    algebra: Arc<FiniteAlgebra>,
    dim: usize,
    action: Vec<Mat>,
}

impl std::fmt::Debug for RightModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RightModule").field("dim", &self.dim).field("action", &self.action).finish()
    }
}

impl PartialEq for RightModule {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && same_algebra(&self.algebra, &other.algebra)
    }
}

impl Eq for RightModule {}

pub(crate) fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RightModule {
    /// Validates the unit law and `ρ(a)ρ(b) = ρ(ab)` on all basis pairs.
    pub fn new(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "one action matrix per basis element",
                expected: algebra.dim(),
                found: action.len(),
            });
        }
        for (a, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.field() != algebra.field() {
                return Err(Error::InvalidModule(format!(
                    "action of {} is {}x{}, expected {dim}x{dim}",
                    algebra.label_name(a),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let module = Self { algebra, dim, action };
        module.verify()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: Arc<FiniteAlgebra>, dim: usize, action: Vec<Mat>) -> Self {
        debug_assert!(Self { algebra: algebra.clone(), dim, action: action.clone() }.verify().is_ok());
        Self { algebra, dim, action }
    }

    fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        if self.action_of(a.unit()) != Mat::identity(a.field(), self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                if self.action[x].mul(&self.action[y]) != self.action_of(a.product(x, y)) {
                    return Err(Error::InvalidModule(format!(
                        "ρ({})ρ({}) ≠ ρ({}·{})",
                        a.label_name(x),
                        a.label_name(y),
                        a.label_name(x),
                        a.label_name(y)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<FiniteAlgebra>) -> Self {
        let action = vec![Mat::zeros(algebra.field(), 0, 0); algebra.dim()];
        Self { algebra: algebra.clone(), dim: 0, action }
    }

    /// The right regular module `A_A`.
    pub fn regular(algebra: &Arc<FiniteAlgebra>) -> Self {
        let action = (0..algebra.dim()).map(|b| algebra.right_multiplication(b)).collect();
        Self::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// The indecomposable projective `e_vv · A`, in the coordinates of its surviving labels.
    pub fn projective(algebra: &Arc<FiniteAlgebra>, vertex: usize) -> Result<Self> {
        let e = algebra.idempotent_index(vertex)?;
        let regular = Self::regular(algebra);
        let sub = regular.spin([algebra.basis_vector(e).as_slice()]);
        Ok(regular.restrict(&sub))
    }

    /// The one-dimensional simple module at `vertex`.
    pub fn simple(algebra: &Arc<FiniteAlgebra>, vertex: usize) -> Result<Self> {
        let e = algebra.idempotent_index(vertex)?;
        let f = algebra.field();
        let action = (0..algebra.dim())
            .map(|b| if b == e { Mat::identity(f, 1) } else { Mat::zeros(f, 1, 1) })
            .collect();
        Ok(Self::new_unchecked(algebra.clone(), 1, action))
    }

    /// Linear dual of a right module over the opposite algebra: `(φ·a)(x) = φ(a·x)`.
    pub fn dual_of_opposite(algebra: &Arc<FiniteAlgebra>, left: &RightModule) -> Result<Self> {
        if left.algebra.labels() != algebra.labels() {
            return Err(Error::MixedAlgebras);
        }
        let action = left.action.iter().map(Mat::transpose).collect();
        Self::new(algebra.clone(), left.dim, action)
    }

    /// Views a module over a quotient algebra `A/I` as an `A`-module (labels in `I` act as zero).
    pub fn inflate(&self, parent: &Arc<FiniteAlgebra>) -> Result<Self> {
        let f = parent.field();
        let action = parent
            .labels()
            .iter()
            .map(|&l| match self.algebra.label_index(l) {
                Some(t) => self.action[t].clone(),
                None => Mat::zeros(f, self.dim, self.dim),
            })
            .collect();
        Self::new(parent.clone(), self.dim, action)
    }

    /// Same module in a new basis: rows of `basis_change` are the new basis vectors.
    pub fn change_basis(&self, basis_change: &Mat) -> Result<Self> {
        let inv = basis_change
            .inverse()?
            .ok_or_else(|| Error::InvalidModule("basis change is singular".into()))?;
        let action = self.action.iter().map(|m| basis_change.mul(m).mul(&inv)).collect();
        Ok(Self::new_unchecked(self.algebra.clone(), self.dim, action))
    }

    #[inline]
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    /// `ρ(x)` for an algebra element given in coordinates.
    pub fn action_of(&self, x: &[Elem]) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (b, &c) in x.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[b].scale(c));
            }
        }
        out
    }

    /// `ρ(r)` for each vector of the radical's canonical basis.
    pub(crate) fn radical_actions(&self) -> Vec<Mat> {
        self.algebra.radical().basis_vectors().map(|r| self.action_of(r)).collect()
    }

    pub(crate) fn idempotent_action(&self, vertex: usize) -> Mat {
        let e = self.algebra.idempotent_index(vertex).expect("vertex of this algebra");
        self.action[e].clone()
    }

    pub fn whole(&self) -> Submodule {
        Submodule(Subspace::full(self.field(), self.dim))
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule(Subspace::zero(self.field(), self.dim))
    }

    pub fn is_closed(&self, space: &Subspace) -> bool {
        space.basis_vectors().all(|v| self.action.iter().all(|m| space.contains(&m.apply(v))))
    }

    pub fn submodule(&self, space: Subspace) -> Result<Submodule> {
        if space.ambient() != self.dim {
            return Err(Error::AmbientMismatch { left: space.ambient(), right: self.dim });
        }
        if !self.is_closed(&space) {
            return Err(Error::NotASubmodule);
        }
        Ok(Submodule(space))
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin<'a>(&self, vectors: impl IntoIterator<Item = &'a [Elem]>) -> Submodule {
        let f = self.field();
        let mut space = Subspace::zero(f, self.dim);
        let mut queue: Vec<Vec<Elem>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), self.dim, "vector length");
            if !space.contains(v) {
                space = Subspace::span(f, self.dim, space.basis_vectors().chain([v]));
                queue.push(v.to_vec());
            }
        }
        while let Some(v) = queue.pop() {
            for m in &self.action {
                let w = m.apply(&v);
                if !space.contains(&w) {
                    space = Subspace::span(f, self.dim, space.basis_vectors().chain([w.as_slice()]));
                    queue.push(w);
                }
            }
        }
        Submodule(space)
    }

    /// The submodule as a module in its own echelon coordinates.
    pub fn restrict(&self, sub: &Submodule) -> RightModule {
        let basis = sub.space().basis();
        let pivots = sub.space().pivots();
        let action = self.action.iter().map(|m| basis.mul(m).select_cols(pivots)).collect();
        Self::new_unchecked(self.algebra.clone(), sub.dim(), action)
    }

    /// Inclusion of a submodule, as a homomorphism from [`RightModule::restrict`].
    pub fn inclusion(&self, sub: &Submodule) -> ModuleHom {
        ModuleHom::new(sub.space().basis().clone())
    }

    /// `M/N` on the complement coordinates (the non-pivot columns of `N`), with the projection.
    pub fn quotient(&self, sub: &Submodule) -> Result<(RightModule, ModuleHom)> {
        if sub.space().ambient() != self.dim {
            return Err(Error::AmbientMismatch { left: sub.space().ambient(), right: self.dim });
        }
        if !self.is_closed(sub.space()) {
            return Err(Error::NotASubmodule);
        }
        let f = self.field();
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.space().pivots().contains(c)).collect();
        let q = free.len();
        let mut proj = Mat::zeros(f, self.dim, q);
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            let r = sub.space().reduce(&e);
            for (j, &c) in free.iter().enumerate() {
                proj.set(i, j, r[c]);
            }
        }
        let mut section = Mat::zeros(f, q, self.dim);
        for (j, &c) in free.iter().enumerate() {
            section.set(j, c, 1);
        }
        let action = self.action.iter().map(|m| section.mul(m).mul(&proj)).collect();
        Ok((Self::new_unchecked(self.algebra.clone(), q, action), ModuleHom::new(proj)))
    }

    /// Image of a homomorphism out of this module.
    pub fn image(&self, hom: &ModuleHom) -> Subspace {
        Subspace::from_mat(hom.matrix.clone())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::algebra::{r3, r4};

    pub fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    pub fn e11r_r3() -> RightModule {
        RightModule::projective(&r3(gf2()), 1).unwrap()
    }

    pub fn e11r_r4() -> RightModule {
        RightModule::projective(&r4(gf2()), 1).unwrap()
    }

    pub fn vector(v: &[i64]) -> Vec<Elem> {
        v.iter().map(|&x| x as Elem).collect()
    }
}
