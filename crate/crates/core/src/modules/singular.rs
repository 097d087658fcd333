use std::ops::ControlFlow;

use super::{RightModule, Submodule};
use crate::caps::Caps;
use crate::error::Result;
use crate::linalg::{Elem, Mat, Subspace};

impl RightModule {
    /// Right annihilator `{a : m·a = 0}` of an element, as a subspace of the algebra.
    pub fn annihilator_of(&self, m: &[Elem]) -> Subspace {
        let rows: Vec<Vec<Elem>> = self.action().iter().map(|r| r.apply(m)).collect();
        Mat::from_row_vecs(self.field(), self.dim(), rows.iter().map(|v| v.as_slice())).left_kernel()
    }

    /// `Z(M) = {m : ann_r(m) is essential in A_A}`, computed element by element.
    pub fn singular_submodule(&self, caps: &Caps) -> Result<Submodule> {
        let regular = RightModule::regular(self.algebra());
        let soc = regular.socle();
        let mut singular: Vec<Vec<Elem>> = Vec::new();
        let _ = Subspace::full(self.field(), self.dim()).for_each_vector::<()>(caps.vectors, |_, m| {
            let ann = self.annihilator_of(m);
            if soc.space().is_subset(&ann).expect("same ambient") {
                singular.push(m.to_vec());
            }
            ControlFlow::Continue(())
        })?;
        let space = Subspace::span(self.field(), self.dim(), singular.iter().map(|v| v.as_slice()));
        self.submodule(space)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::{diagonal, r3};

    /// Closed form: `m ∈ Z(M)` iff `m·s = 0` for every `s ∈ Soc(A_A)`.
    fn singular_closed_form(m: &RightModule) -> Subspace {
        let regular = RightModule::regular(m.algebra());
        let f = m.field();
        let blocks = regular
            .socle()
            .space()
            .basis_vectors()
            .map(|s| m.action_of(s))
            .fold(Mat::zeros(f, m.dim(), 0), |acc, b| acc.hstack(&b));
        blocks.left_kernel()
    }

    #[test]
    fn semisimple_algebra_is_nonsingular() {
        let a = diagonal(3, gf2());
        let z = RightModule::regular(&a).singular_submodule(&Caps::default()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn simples_of_r3() {
        let caps = Caps::default();
        let a = r3(gf2());
        let s1 = RightModule::simple(&a, 1).unwrap();
        assert_eq!(s1.singular_submodule(&caps).unwrap(), s1.whole());
        for v in [2, 3] {
            let s = RightModule::simple(&a, v).unwrap();
            assert!(s.singular_submodule(&caps).unwrap().is_zero());
        }
        assert!(RightModule::zero(&a).singular_submodule(&caps).unwrap().is_zero());
    }

    #[test]
    fn agrees_with_closed_form() {
        let caps = Caps::default();
        let a = r3(PrimeField::new(3).unwrap());
        for m in [RightModule::regular(&a), e11r_r3(), e11r_r4()] {
            assert_eq!(*m.singular_submodule(&caps).unwrap().space(), singular_closed_form(&m));
        }
    }

    use crate::linalg::PrimeField;
}
