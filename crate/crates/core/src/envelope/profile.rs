use serde::{Deserialize, Serialize};

use super::{AutomorphismCount, Decision, Witness};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::modules::{Multiset, RightModule};

/// A property value; `None` when a cap stopped the computation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub value: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Flag {
    fn of(b: bool) -> Self {
        Self { value: Some(b), witness: None }
    }

    fn structural(b: bool, reason: impl FnOnce() -> String) -> Self {
        Self { value: Some(b), witness: (!b).then(|| Witness::Structural { reason: reason() }) }
    }

    fn undecided() -> Self {
        Self::default()
    }

    fn and(&self, other: &Flag) -> Self {
        match (self.value, other.value) {
            (Some(false), _) => self.clone(),
            (_, Some(false)) => other.clone(),
            (Some(true), Some(true)) => Flag::of(true),
            _ => Flag::undecided(),
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Some(true)
    }

    pub fn is_false(&self) -> bool {
        self.value == Some(false)
    }
}

impl From<Decision> for Flag {
    fn from(d: Decision) -> Self {
        Self { value: Some(d.holds), witness: d.witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyProfile {
    pub injective: Flag,
    pub quasi_injective: Flag,
    pub pseudo_injective: Flag,
    pub automorphism_invariant: Flag,
    pub c1: Flag,
    pub c2: Flag,
    pub c3: Flag,
    pub cs: Flag,
    pub continuous: Flag,
    pub quasi_continuous: Flag,
    pub quasi_projective: Flag,
    pub uniform: Flag,
    pub uniserial: Flag,
    pub local: Flag,
    pub indecomposable: Flag,
    pub square_free_socle: Flag,
    pub dim: usize,
    pub composition_length: usize,
    pub goldie_dimension: usize,
    pub socle: Multiset,
    pub top: Multiset,
    pub hull_blocks: Multiset,
    pub hull_dim: usize,
    pub end_hull_size: Option<u64>,
    pub aut_hull_size: Option<u64>,
    /// Resources whose caps were hit, in the order they were hit.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cap_notices: Vec<String>,
}

/// Converts a cap overflow into an undecided flag and records it; other errors propagate.
fn capped<T>(r: Result<T>, notices: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::CapExceeded { .. }) => {
            let msg = e.to_string();
            if !notices.contains(&msg) {
                notices.push(msg);
            }
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn flag(d: Option<Decision>) -> Flag {
    d.map_or_else(Flag::undecided, Flag::from)
}

impl PropertyProfile {
    pub fn compute(m: &RightModule, caps: &Caps) -> Result<Self> {
        let mut notices = Vec::new();
        let hull = m.injective_hull()?;
        let lattice = capped(m.submodule_lattice(caps), &mut notices)?;
        let summands = capped(m.summands(caps), &mut notices)?;

        let injective = Flag::from(m.injectivity()?);
        let quasi_injective = Flag::from(hull.quasi_injectivity()?);
        let ai = capped(hull.automorphism_invariance(caps), &mut notices)?;
        let (automorphism_invariant, end_hull_size, aut_hull_size) = match ai {
            Some(AutomorphismCount { decision, end_size, aut_size }) => (Flag::from(decision), Some(end_size), Some(aut_size)),
            None => (Flag::undecided(), None, None),
        };
        let pseudo_injective = match &lattice {
            Some(l) => flag(capped(m.pseudo_injectivity_over(l, caps), &mut notices)?),
            None => Flag::undecided(),
        };
        let (c1, c2, c3) = match (&lattice, &summands) {
            (Some(l), Some(s)) => (
                Flag::from(m.c1_over(l, s)?),
                flag(capped(m.c2_over(l, s, caps), &mut notices)?),
                Flag::from(m.c3_over(s)?),
            ),
            (None, Some(s)) => (Flag::undecided(), Flag::undecided(), Flag::from(m.c3_over(s)?)),
            _ => (Flag::undecided(), Flag::undecided(), Flag::undecided()),
        };
        let quasi_projective = match &lattice {
            Some(l) => Flag::from(m.quasi_projectivity_over(l)?),
            None => Flag::undecided(),
        };
        let indecomposable = match capped(m.nontrivial_idempotent(caps), &mut notices)? {
            Some(None) => Flag::structural(m.dim() > 0, || "zero module".into()),
            Some(Some(e)) => Flag::structural(false, || {
                format!("nontrivial idempotent of rank {}", e.rank())
            }),
            None => Flag::undecided(),
        };

        let soc = m.socle_labels();
        let top = m.top_labels();
        let uniform = Flag::structural(m.is_uniform(), || format!("socle {soc} is not simple"));
        let uniserial = Flag::structural(m.is_uniserial(), || format!("radical layers {:?}", m.radical_series_dims()));
        let local = Flag::structural(m.is_local(), || format!("top {top} is not simple"));
        let square_free_socle = Flag::structural(soc.is_square_free(), || format!("socle {soc} has a repeated label"));

        Ok(Self {
            cs: c1.clone(),
            continuous: c1.and(&c2),
            quasi_continuous: c1.and(&c3),
            injective,
            quasi_injective,
            pseudo_injective,
            automorphism_invariant,
            c1,
            c2,
            c3,
            quasi_projective,
            uniform,
            uniserial,
            local,
            indecomposable,
            square_free_socle,
            dim: m.dim(),
            composition_length: m.composition_length(),
            goldie_dimension: m.goldie_dimension(),
            socle: soc,
            top,
            hull_blocks: hull.hull_labels(),
            hull_dim: hull.hull.dim(),
            end_hull_size,
            aut_hull_size,
            cap_notices: notices,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.cap_notices.is_empty()
    }

    /// The implications every profile must satisfy, as `(name, satisfied)`. Undecided flags
    /// never count as violations.
    pub fn consistency_checks(&self) -> Vec<(&'static str, bool)> {
        let implies = |a: &Flag, b: &Flag| !(a.is_true() && b.is_false());
        let same = |a: &Flag, b: &Flag| a.value.is_none() || b.value.is_none() || a.value == b.value;
        vec![
            ("injective implies quasi-injective", implies(&self.injective, &self.quasi_injective)),
            ("quasi-injective implies pseudo-injective", implies(&self.quasi_injective, &self.pseudo_injective)),
            ("pseudo-injective implies automorphism-invariant", implies(&self.pseudo_injective, &self.automorphism_invariant)),
            ("quasi-injective implies continuous", implies(&self.quasi_injective, &self.continuous)),
            ("continuous implies quasi-continuous", implies(&self.continuous, &self.quasi_continuous)),
            ("CS is C1", same(&self.cs, &self.c1)),
            ("automorphism-invariant implies C3", implies(&self.automorphism_invariant, &self.c3)),
            ("uniserial implies uniform", implies(&self.uniserial, &self.uniform) || self.dim == 0),
            ("Goldie dimension is socle length", self.goldie_dimension == self.socle.total()),
            ("hull blocks match socle", self.hull_blocks == self.socle),
        ]
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_checks().iter().all(|(_, ok)| *ok)
    }

    /// Flags by name, in a fixed order shared by the text and structured renderings.
    pub fn flags(&self) -> Vec<(&'static str, &Flag)> {
        vec![
            ("injective", &self.injective),
            ("quasi_injective", &self.quasi_injective),
            ("pseudo_injective", &self.pseudo_injective),
            ("automorphism_invariant", &self.automorphism_invariant),
            ("c1", &self.c1),
            ("c2", &self.c2),
            ("c3", &self.c3),
            ("cs", &self.cs),
            ("continuous", &self.continuous),
            ("quasi_continuous", &self.quasi_continuous),
            ("quasi_projective", &self.quasi_projective),
            ("uniform", &self.uniform),
            ("uniserial", &self.uniserial),
            ("local", &self.local),
            ("indecomposable", &self.indecomposable),
            ("square_free_socle", &self.square_free_socle),
        ]
    }
}

impl RightModule {
    pub fn property_profile(&self, caps: &Caps) -> Result<PropertyProfile> {
        PropertyProfile::compute(self, caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{r3, r4};
    use crate::envelope::indecomposable_injective;
    use crate::linalg::PrimeField;
    use crate::modules::ModuleScript;

    #[test]
    fn profile_of_e11r() {
        let m = RightModule::projective(&r3(PrimeField::gf2()), 1).unwrap();
        let p = m.property_profile(&Caps::default()).unwrap();
        assert!(p.automorphism_invariant.is_true());
        assert!(p.quasi_injective.is_false());
        assert!(p.pseudo_injective.is_true());
        assert!(p.uniform.is_false());
        assert!(p.local.is_true());
        assert_eq!((p.end_hull_size, p.aut_hull_size), (Some(4), Some(1)));
        assert!(p.is_consistent());
        assert!(p.is_complete());
        assert!(p.uniform.witness.is_some());
    }

    #[test]
    fn profile_of_b() {
        let b = ModuleScript::evaluate(
            &r4(PrimeField::gf2()),
            "submodule (sum (injective 2) (injective 3) (injective 4)) spanned [[1, 0, 1, 0, 0, 0], [0, 0, 1, 0, 1, 0]]",
        )
        .unwrap();
        let p = b.property_profile(&Caps::default()).unwrap();
        assert!(p.automorphism_invariant.is_true());
        assert!(p.local.is_false());
        assert!(p.indecomposable.is_true());
        assert_eq!(p.composition_length, 5);
        assert!(p.is_consistent());
    }

    #[test]
    fn injectives_have_every_hierarchy_flag() {
        let a = r4(PrimeField::gf2());
        for i in 1..=4 {
            let p = indecomposable_injective(&a, i).unwrap().property_profile(&Caps::default()).unwrap();
            for f in [&p.injective, &p.quasi_injective, &p.pseudo_injective, &p.automorphism_invariant, &p.continuous] {
                assert!(f.is_true());
            }
        }
    }

    #[test]
    fn caps_leave_flags_undecided() {
        let m = RightModule::regular(&r4(PrimeField::gf2()));
        let caps = Caps { vectors: 8, homs: 8, lattice: 8 };
        let p = m.property_profile(&caps).unwrap();
        assert!(!p.is_complete());
        assert_eq!(p.pseudo_injective.value, None);
        assert_eq!(p.automorphism_invariant.value, None);
        assert!(p.injective.value.is_some());
        assert!(p.is_consistent());
    }
}
