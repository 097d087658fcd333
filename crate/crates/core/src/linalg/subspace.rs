use std::cmp::Ordering;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::enumerate::for_each_combination;
use super::field::{Elem, PrimeField};
use super::mat::Mat;
use crate::error::{Error, Result};

/// A subspace of GF(p)^n, held as its reduced row-echelon basis.
///
/// The echelon basis is unique, so two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self { basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self { basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_mat(m: Mat) -> Self {
        let r = m.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let basis = Mat::from_row_vecs(m.field(), m.cols(), rows.iter().map(|&i| r.matrix.row(i)));
        Self { basis, pivots: r.pivots }
    }

    pub fn span<'a>(field: PrimeField, ambient: usize, vectors: impl IntoIterator<Item = &'a [Elem]>) -> Self {
        Self::from_mat(Mat::from_row_vecs(field, ambient, vectors))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// The canonical basis, one vector per row.
    #[inline]
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Elem]> + '_ {
        self.basis.row_iter()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.basis.row(r));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient(), "vector length");
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn is_subset(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.dim() <= other.dim() && self.basis_vectors().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::from_mat(self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field(), self.ambient()));
        }
        // (x, y) with x·U + y·V = 0 gives x·U in U ∩ V
        let stacked = self.basis.vstack(&other.basis);
        let rel = stacked.left_kernel();
        let k = self.dim();
        let xs: Vec<Vec<Elem>> = rel.basis_vectors().map(|r| r[..k].to_vec()).collect();
        let f = self.field();
        let x = Mat::from_row_vecs(f, k, xs.iter().map(|v| v.as_slice()));
        Ok(Self::from_mat(x.mul(&self.basis)))
    }

    /// Image of the subspace under `v ↦ v·m`.
    pub fn image(&self, m: &Mat) -> Subspace {
        Self::from_mat(self.basis.mul(m))
    }

    /// Matrix whose right null space is this subspace's orthogonal complement, i.e.
    /// `v` lies in the subspace iff `v·annihilator() = 0`.
    pub fn annihilator(&self) -> Mat {
        self.basis.kernel().basis().transpose()
    }

    /// Visits every vector of the subspace in lexicographic coefficient order.
    pub fn for_each_vector<B>(&self, cap: u64, f: impl FnMut(&[Elem], &[Elem]) -> ControlFlow<B>) -> Result<ControlFlow<B>> {
        let count = self.field().count(self.dim());
        if count > cap {
            return Err(Error::CapExceeded { resource: "vector enumeration", limit: cap, required: count });
        }
        let rows: Vec<&[Elem]> = self.basis_vectors().collect();
        Ok(for_each_combination(self.field(), &rows, self.ambient(), f))
    }

    pub fn enumerate_vectors(&self, cap: u64) -> Result<Vec<Vec<Elem>>> {
        let mut out = Vec::new();
        let _ = self.for_each_vector::<()>(cap, |_, v| {
            out.push(v.to_vec());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by dimension, then lexicographically by canonical basis.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient(), self.dim(), self.basis.data()).cmp(&(other.ambient(), other.dim(), other.basis.data()))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}: ", self.dim(), self.ambient())?;
        f.debug_list().entries(self.basis.row_iter()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    fn line(v: &[Elem]) -> Subspace {
        Subspace::span(gf2(), v.len(), [v])
    }

    #[test]
    fn equal_spaces() {
        let u = line(&[1, 1, 0]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn complementary_lines() {
        let u = line(&[1, 0]);
        let v = line(&[1, 1]);
        assert!(u.sum(&v).unwrap().is_full());
        assert!(u.intersect(&v).unwrap().is_zero());
    }

    #[test]
    fn skew_lines_in_gf2_cubed() {
        let u = line(&[1, 1, 0]);
        let v = line(&[0, 1, 1]);
        // oracle: enumerate all 8 vectors and test membership in each line
        let all = Subspace::full(gf2(), 3).enumerate_vectors(1 << 22).unwrap();
        let common: Vec<_> = all.iter().filter(|x| u.contains(x) && v.contains(x)).collect();
        assert_eq!(common.len(), 1);
        assert!(u.intersect(&v).unwrap().is_zero());
        let s = u.sum(&v).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(all.iter().filter(|x| s.contains(x)).count(), 4);
    }

    #[test]
    fn ambient_mismatch() {
        let u = Subspace::full(gf2(), 2);
        let v = Subspace::full(gf2(), 3);
        assert!(matches!(u.sum(&v), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(u.intersect(&v), Err(Error::AmbientMismatch { .. })));
        assert!(matches!(u.is_subset(&v), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn enumeration_order_and_cap() {
        let f = PrimeField::new(3).unwrap();
        let s = Subspace::span(f, 2, [&[1u8, 2][..]]);
        assert_eq!(s.enumerate_vectors(10).unwrap(), vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        assert!(matches!(Subspace::full(f, 3).enumerate_vectors(26), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn annihilator_detects_membership() {
        let u = line(&[1, 1, 0]);
        let a = u.annihilator();
        assert!(a.apply(&[1, 1, 0]).iter().all(|&x| x == 0));
        assert!(a.apply(&[1, 0, 0]).iter().any(|&x| x != 0));
    }
}
