use std::collections::HashSet;
use std::ops::ControlFlow;

use super::{RightModule, Submodule};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

impl RightModule {
    /// Every cyclic submodule `vR`, deduplicated and sorted.
    pub fn cyclic_submodules(&self, caps: &Caps) -> Result<Vec<Submodule>> {
        let mut seen: HashSet<Submodule> = HashSet::new();
        let _ = Subspace::full(self.field(), self.dim()).for_each_vector::<()>(caps.vectors, |_, v| {
            // vR = (cv)R, so only vectors whose leading entry is 1 are spun
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                seen.insert(self.spin([v]));
            }
            ControlFlow::Continue(())
        })?;
        let mut out: Vec<Submodule> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// All submodules, ordered by dimension and then canonical basis.
    ///
    /// Every submodule is a finite sum of cyclic ones, so closing the cyclic submodules under
    /// adding one cyclic submodule at a time reaches the whole lattice.
    pub fn submodule_lattice(&self, caps: &Caps) -> Result<Vec<Submodule>> {
        let cyclic = self.cyclic_submodules(caps)?;
        let mut all: HashSet<Submodule> = cyclic.iter().cloned().collect();
        all.insert(self.zero_submodule());
        let over = |n: usize| Error::CapExceeded { resource: "submodule lattice", limit: caps.lattice, required: n as u64 };
        if all.len() as u64 > caps.lattice {
            return Err(over(all.len()));
        }
        let mut frontier = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.is_subset(s) {
                        continue;
                    }
                    let t = s.sum(c);
                    if !all.contains(&t) {
                        if all.len() as u64 >= caps.lattice {
                            return Err(over(all.len() + 1));
                        }
                        all.insert(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Submodule> = all.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::algebra::r3;
    use crate::envelope::indecomposable_injective;

    #[test]
    fn simple_module_has_two_submodules() {
        let s = RightModule::simple(&r3(gf2()), 2).unwrap();
        let l = s.submodule_lattice(&Caps::default()).unwrap();
        assert_eq!(l, vec![s.zero_submodule(), s.whole()]);
    }

    #[test]
    fn lattice_of_e11r() {
        let m = e11r_r3();
        let l = m.submodule_lattice(&Caps::default()).unwrap();
        // 0, e12F, e13F, Soc, e11R; span{e12 + e13} is not closed
        assert_eq!(l.len(), 5);
        assert_eq!(l.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![0, 1, 1, 2, 3]);
        assert!(!l.iter().any(|s| s.dim() == 1 && s.contains(&[0, 1, 1])));
    }

    #[test]
    fn uniserial_injective_is_a_chain() {
        let l1 = indecomposable_injective(&r3(gf2()), 2).unwrap();
        assert_eq!(l1.submodule_lattice(&Caps::default()).unwrap().len(), 3);
    }

    #[test]
    fn caps_are_enforced() {
        let m = e11r_r3();
        let tight = Caps { vectors: 4, ..Caps::default() };
        assert!(matches!(m.submodule_lattice(&tight), Err(Error::CapExceeded { .. })));
        let tight = Caps { lattice: 3, ..Caps::default() };
        assert!(matches!(m.submodule_lattice(&tight), Err(Error::CapExceeded { .. })));
    }
}
