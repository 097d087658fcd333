//! Injective hulls and the injectivity hierarchy.

mod predicates;
mod profile;

use std::ops::Range;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Elem, Mat, Subspace};
use crate::modules::{DirectSum, ModuleHom, Multiset, RightModule, Submodule};

pub use predicates::{AutomorphismCount, Decision, Witness};
pub use profile::{Flag, PropertyProfile};

/// `E(S_i)`: the linear dual of the left projective `A·e_ii`.
pub fn indecomposable_injective(algebra: &Arc<FiniteAlgebra>, vertex: usize) -> Result<RightModule> {
    let left = RightModule::projective(&algebra.opposite(), vertex)?;
    let e = RightModule::dual_of_opposite(algebra, &left)?;
    let soc = e.socle_labels();
    if soc.total() != 1 || soc.multiplicity(vertex) != 1 {
        return Err(Error::Internal(format!("socle of E(S{vertex}) is {soc}")));
    }
    Ok(e)
}

/// `dim E(M)` without building the embedding.
pub fn hull_dim(module: &RightModule) -> Result<usize> {
    let mut total = 0;
    for (label, mult) in module.socle_labels().0 {
        total += mult * indecomposable_injective(module.algebra(), label)?.dim();
    }
    Ok(total)
}

/// `M ⊆_e E(M) = ⊕ E(S_i)^{m_i}` with an explicit embedding.
#[derive(Clone, Debug)]
pub struct InjectiveHull {
    pub source: RightModule,
    pub hull: RightModule,
    pub embedding: ModuleHom,
    /// `(label, multiplicity)` in increasing label order.
    pub blocks: Vec<(usize, usize)>,
    /// Coordinate range of each indecomposable copy, labels repeated per copy.
    pub block_ranges: Vec<(usize, Range<usize>)>,
}

impl InjectiveHull {
    pub fn new(module: &RightModule) -> Result<Self> {
        let algebra = module.algebra();
        let f = module.field();
        let soc = module.socle();
        let labels = module.labels_of(&soc);
        let blocks: Vec<(usize, usize)> = labels.0.iter().map(|(&l, &m)| (l, m)).collect();
        if blocks.is_empty() {
            return Ok(Self {
                source: module.clone(),
                hull: RightModule::zero(algebra),
                embedding: ModuleHom::new(Mat::zeros(f, module.dim(), 0)),
                blocks,
                block_ranges: Vec::new(),
            });
        }

        let mut parts = Vec::new();
        for &(label, mult) in &blocks {
            let e = indecomposable_injective(algebra, label)?;
            parts.extend(std::iter::repeat_n((label, e), mult));
        }
        let refs: Vec<&RightModule> = parts.iter().map(|(_, e)| e).collect();
        let sum = DirectSum::new(&refs)?;
        let hull = sum.module;
        let block_ranges: Vec<(usize, Range<usize>)> =
            parts.iter().map(|(l, _)| *l).zip(sum.blocks.iter().cloned()).collect();

        // socle matching: the k-th basis vector of Soc(M)·e_ii goes to the socle of the k-th copy of E(S_i)
        let mut sources: Vec<Vec<Elem>> = Vec::new();
        let mut targets: Vec<Vec<Elem>> = Vec::new();
        let mut copy = 0;
        for &(label, _) in &blocks {
            let part = soc.space().image(&module.idempotent_action(label));
            for s in part.basis_vectors() {
                let (_, ref e) = parts[copy];
                let local = e.socle();
                let mut t = vec![0; hull.dim()];
                t[block_ranges[copy].1.clone()].copy_from_slice(local.space().basis().row(0));
                sources.push(s.to_vec());
                targets.push(t);
                copy += 1;
            }
        }
        debug_assert_eq!(copy, parts.len());

        let homs = module.hom_space(&hull)?.basis();
        let eqs = sources.len() * hull.dim();
        let mut system = Mat::zeros(f, eqs, homs.len());
        let mut rhs = Mat::zeros(f, eqs, 1);
        for (j, h) in homs.iter().enumerate() {
            for (k, s) in sources.iter().enumerate() {
                for (c, &x) in h.matrix.apply(s).iter().enumerate() {
                    system.set(k * hull.dim() + c, j, x);
                }
            }
        }
        for (k, t) in targets.iter().enumerate() {
            for (c, &x) in t.iter().enumerate() {
                rhs.set(k * hull.dim() + c, 0, x);
            }
        }
        let sol = system
            .solve(&rhs)?
            .ok_or_else(|| Error::Internal("socle inclusion does not extend to the hull".into()))?;
        let mut iota = Mat::zeros(f, module.dim(), hull.dim());
        for (j, h) in homs.iter().enumerate() {
            let c = sol.particular.get(j, 0);
            if c != 0 {
                iota = iota.add(&h.matrix.scale(c));
            }
        }
        let embedding = ModuleHom::new(iota);
        let out = Self { source: module.clone(), hull, embedding, blocks, block_ranges };
        if !out.embedding.is_injective() || !out.is_essential() {
            return Err(Error::Internal("hull embedding is not an essential monomorphism".into()));
        }
        Ok(out)
    }

    /// `ι(M)` as a submodule of `E`.
    pub fn image(&self) -> Submodule {
        Submodule(Subspace::from_mat(self.embedding.matrix.clone()))
    }

    /// `Soc(E) ⊆ ι(M)`.
    pub fn is_essential(&self) -> bool {
        self.hull.socle().is_subset(&self.image())
    }

    /// `ι` maps `Soc(M)` onto `Soc(E)`.
    pub fn transports_socle(&self) -> bool {
        let soc = self.source.socle();
        let image = soc.space().image(&self.embedding.matrix);
        image.dim() == soc.dim() && image == *self.hull.socle().space()
    }

    pub fn hull_labels(&self) -> Multiset {
        Multiset(self.blocks.iter().copied().collect())
    }

    /// Submodule of `E` given by the coordinate blocks at the given copy positions.
    pub fn block_span(&self, copies: &[usize]) -> Subspace {
        let f = self.hull.field();
        let n = self.hull.dim();
        let rows: Vec<Vec<Elem>> = copies
            .iter()
            .flat_map(|&c| self.block_ranges[c].1.clone())
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace::span(f, n, rows.iter().map(|v| v.as_slice()))
    }

    /// Projection of `E` onto the blocks in `copies` along the others, as an endomorphism of `E`.
    pub fn block_projection(&self, copies: &[usize]) -> Mat {
        let n = self.hull.dim();
        let mut p = Mat::zeros(self.hull.field(), n, n);
        for &c in copies {
            for i in self.block_ranges[c].1.clone() {
                p.set(i, i, 1);
            }
        }
        p
    }
}

impl RightModule {
    pub fn injective_hull(&self) -> Result<InjectiveHull> {
        InjectiveHull::new(self)
    }

    /// `dim E(M) = dim M`.
    pub fn is_injective(&self) -> Result<bool> {
        Ok(hull_dim(self)? == self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{r3, r4, upper_triangular};
    use crate::linalg::PrimeField;
    use crate::modules::ModuleScript;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    #[test]
    fn indecomposable_injectives_of_r3() {
        let a = r3(gf2());
        let e1 = indecomposable_injective(&a, 1).unwrap();
        assert_eq!(e1, RightModule::simple(&a, 1).unwrap());
        for i in [2, 3] {
            let e = indecomposable_injective(&a, i).unwrap();
            assert_eq!(e.dim(), 2);
            assert!(e.is_uniserial());
            assert!(e.is_uniform());
            assert_eq!(e.composition_length(), 2);
            assert!(e.is_injective().unwrap());
        }
        assert!(matches!(indecomposable_injective(&a, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn first_row_of_t2_is_injective() {
        let a = upper_triangular(2, gf2());
        let e2 = indecomposable_injective(&a, 2).unwrap();
        let p1 = RightModule::projective(&a, 1).unwrap();
        assert_eq!(e2.dim(), 2);
        assert!(e2.is_isomorphic(&p1, &Default::default()).unwrap().is_some());
        assert!(p1.is_injective().unwrap());
    }

    #[test]
    fn hull_of_e11r() {
        let m = RightModule::projective(&r3(gf2()), 1).unwrap();
        let h = m.injective_hull().unwrap();
        assert_eq!(h.hull.dim(), 4);
        assert_eq!(h.blocks, vec![(2, 1), (3, 1)]);
        assert!(h.embedding.is_intertwining(&m, &h.hull));
        assert!(h.transports_socle());
        assert!(!m.is_injective().unwrap());

        let m4 = RightModule::projective(&r4(gf2()), 1).unwrap();
        let h4 = m4.injective_hull().unwrap();
        assert_eq!(h4.hull.dim(), 6);
        assert_eq!(h4.block_ranges.len(), 3);
    }

    #[test]
    fn hull_is_idempotent_and_zero_is_injective() {
        let a = r4(gf2());
        let b = ModuleScript::evaluate(
            &a,
            "submodule (sum (injective 2) (injective 3) (injective 4)) spanned [[1, 0, 1, 0, 0, 0], [0, 0, 1, 0, 1, 0]]",
        )
        .unwrap();
        let h = b.injective_hull().unwrap();
        assert_eq!(h.hull.dim(), 6);
        assert!(h.is_essential());
        assert_eq!(h.hull.injective_hull().unwrap().hull.dim(), 6);
        let z = RightModule::zero(&a);
        assert!(z.is_injective().unwrap());
        assert_eq!(z.injective_hull().unwrap().hull.dim(), 0);
    }

    #[test]
    fn repeated_blocks() {
        let a = r3(gf2());
        let s = ModuleScript::evaluate(&a, "sum (simple 2) (simple 2)").unwrap();
        let h = s.injective_hull().unwrap();
        assert_eq!(h.blocks, vec![(2, 2)]);
        assert_eq!(h.hull.dim(), 4);
        assert!(h.transports_socle());
    }
}
