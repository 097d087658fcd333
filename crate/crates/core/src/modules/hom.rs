use std::ops::ControlFlow;

use super::{same_algebra, ModuleHom, RightModule};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{for_each_combination, Elem, Mat, PrimeField, Subspace};

/// All homomorphisms between two modules, as a basis of intertwining matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    field: PrimeField,
    source_dim: usize,
    target_dim: usize,
    /// Each basis element flattened row-major into a vector of length `source_dim * target_dim`.
    space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Number of elements, `p^dim` (saturating).
    pub fn size(&self) -> u64 {
        self.field.count(self.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    fn unflatten(&self, v: &[Elem]) -> Mat {
        Mat::from_raw(self.field, self.source_dim, self.target_dim, v.to_vec())
    }

    pub fn basis(&self) -> Vec<ModuleHom> {
        self.space.basis_vectors().map(|v| ModuleHom::new(self.unflatten(v))).collect()
    }

    /// Flattened basis, one row per basis homomorphism.
    pub fn flat(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, h: &Mat) -> bool {
        h.rows() == self.source_dim && h.cols() == self.target_dim && self.space.contains(h.data())
    }

    /// Visits every homomorphism in lexicographic coefficient order.
    pub fn for_each<B>(&self, caps: &Caps, mut f: impl FnMut(&Mat) -> ControlFlow<B>) -> Result<ControlFlow<B>> {
        let count = self.size();
        if count > caps.homs {
            return Err(Error::CapExceeded { resource: "hom enumeration", limit: caps.homs, required: count });
        }
        let rows: Vec<&[Elem]> = self.space.basis_vectors().collect();
        let len = self.source_dim * self.target_dim;
        Ok(for_each_combination(self.field, &rows, len, |_, v| f(&self.unflatten(v))))
    }

    pub fn elements(&self, caps: &Caps) -> Result<Vec<Mat>> {
        let mut out = Vec::new();
        let _ = self.for_each::<()>(caps, |m| {
            out.push(m.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// For an endomorphism space: the multiplication table `basis[i] ∘ basis[j]` in basis coordinates,
    /// where composition is "first i, then j" (`B_i · B_j`).
    pub fn composition_table(&self) -> Option<Vec<Vec<Vec<Elem>>>> {
        if self.source_dim != self.target_dim {
            return None;
        }
        let basis: Vec<Mat> = self.space.basis_vectors().map(|v| self.unflatten(v)).collect();
        Some(
            basis
                .iter()
                .map(|x| {
                    basis
                        .iter()
                        .map(|y| self.space.coordinates(x.mul(y).data()).expect("endomorphisms compose"))
                        .collect()
                })
                .collect(),
        )
    }
}

impl RightModule {
    /// All `H` with `ρ_M(a)·H = H·ρ_N(a)` for every basis element `a`.
    pub fn hom_space(&self, target: &RightModule) -> Result<HomSpace> {
        if !same_algebra(self.algebra(), target.algebra()) {
            return Err(Error::MixedAlgebras);
        }
        let f = self.field();
        let (m, n) = (self.dim(), target.dim());
        let unknowns = m * n;
        let mut system = Mat::zeros(f, 0, unknowns);
        for a in 0..self.algebra().dim() {
            let (rm, rn) = (&self.action()[a], &target.action()[a]);
            let mut eqs = Mat::zeros(f, unknowns, unknowns);
            for i in 0..m {
                for j in 0..n {
                    let row = eqs.row_mut(i * n + j);
                    for k in 0..m {
                        let c = rm.get(i, k);
                        if c != 0 {
                            row[k * n + j] = f.add(row[k * n + j], c);
                        }
                    }
                    for k in 0..n {
                        let c = rn.get(k, j);
                        if c != 0 {
                            row[i * n + k] = f.sub(row[i * n + k], c);
                        }
                    }
                }
            }
            if eqs.is_zero() {
                continue;
            }
            // keep the accumulated system in echelon form so it never exceeds `unknowns` rows
            system = Subspace::from_mat(system.vstack(&eqs)).basis().clone();
            if system.rows() == unknowns {
                break;
            }
        }
        Ok(HomSpace { field: f, source_dim: m, target_dim: n, space: system.kernel() })
    }

    pub fn end_space(&self) -> Result<HomSpace> {
        self.hom_space(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::r3;
    use crate::modules::DirectSum;

    #[test]
    fn homs_are_intertwiners() {
        let m = e11r_r3();
        let s2 = RightModule::simple(&r3(gf2()), 2).unwrap();
        let h = s2.hom_space(&m).unwrap();
        assert_eq!(h.dim(), 1);
        for b in h.basis() {
            assert!(b.is_intertwining(&s2, &m));
        }
        assert_eq!(m.end_space().unwrap().dim(), 1);
        assert_eq!(m.hom_space(&s2).unwrap().dim(), 0);
    }

    #[test]
    fn end_of_square_of_simple_oracle() {
        let a = r3(gf2());
        let s = RightModule::simple(&a, 2).unwrap();
        let ss = DirectSum::new(&[&s, &s]).unwrap().module;
        // oracle: all 16 candidate 2x2 matrices, filtered by the intertwining identity
        let mut count = 0;
        for bits in 0..16u8 {
            let e: Vec<i64> = (0..4).map(|k| ((bits >> k) & 1) as i64).collect();
            let h = ModuleHom::new(Mat::from_vec(gf2(), 2, 2, e).unwrap());
            if h.is_intertwining(&ss, &ss) {
                count += 1;
            }
        }
        let end = ss.end_space().unwrap();
        assert_eq!(count, 16);
        assert_eq!(end.dim(), 4);
        assert_eq!(end.size(), count);
    }

    #[test]
    fn composition_table_of_matrix_algebra() {
        let a = r3(gf2());
        let s = RightModule::simple(&a, 3).unwrap();
        let ss = DirectSum::new(&[&s, &s]).unwrap().module;
        let table = ss.end_space().unwrap().composition_table().unwrap();
        assert_eq!(table.len(), 4);
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let m = e11r_r3();
        let n = e11r_r4();
        assert!(matches!(m.hom_space(&n), Err(Error::MixedAlgebras)));
    }
}
