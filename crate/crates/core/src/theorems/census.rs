use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::caps::Caps;
use crate::envelope::{indecomposable_injective, PropertyProfile};
use crate::error::{Error, Result};
use crate::modules::{DirectSum, ModuleInvariants, RightModule, Submodule};

/// How completeness of a census was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `(label, copies)` of the cogenerator `⊕ E(S_i)^{c_i}`.
    pub cogenerator: Vec<(usize, usize)>,
    pub cogenerator_dim: usize,
    pub submodules_examined: usize,
    /// Only cyclic submodules were examined because the lattice cap was hit.
    pub partial: bool,
}

/// Pairwise non-isomorphic modules covering every module whose socle multiplicities are within
/// the bounds and whose length is at most `max_length`: each such module embeds in its hull,
/// which is a summand of the cogenerator.
#[derive(Clone, Debug)]
pub struct Census {
    pub name: String,
    pub algebra: Arc<FiniteAlgebra>,
    pub bounds: Vec<usize>,
    pub max_length: usize,
    pub representatives: Vec<RightModule>,
    pub certificate: Certificate,
}

impl Census {
    pub fn universe(&self) -> String {
        let bounds: Vec<String> = self.bounds.iter().map(usize::to_string).collect();
        format!(
            "{} over GF({}), socle bounds ({}), length <= {}, {} representatives{}",
            self.name,
            self.algebra.field().p(),
            bounds.join(","),
            self.max_length,
            self.representatives.len(),
            if self.certificate.partial { " (partial)" } else { "" }
        )
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Keeps the first module of each isomorphism class, in input order.
pub(crate) fn dedupe(modules: impl IntoIterator<Item = RightModule>, caps: &Caps) -> Result<Vec<RightModule>> {
    let mut reps: Vec<RightModule> = Vec::new();
    let mut classes: BTreeMap<ModuleInvariants, Vec<usize>> = BTreeMap::new();
    for m in modules {
        let inv = m.invariants();
        let group = classes.entry(inv).or_default();
        let mut seen = false;
        for &k in group.iter() {
            if m.isomorphism_unfiltered(&reps[k], caps, true)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            group.push(reps.len());
            reps.push(m);
        }
    }
    Ok(reps)
}

pub fn build_census(
    name: &str,
    algebra: &Arc<FiniteAlgebra>,
    bounds: &[usize],
    max_length: usize,
    caps: &Caps,
) -> Result<Census> {
    let (candidates, certificate) = candidates(algebra, bounds, max_length, caps)?;
    Ok(Census {
        name: name.to_string(),
        algebra: algebra.clone(),
        bounds: bounds.to_vec(),
        max_length,
        representatives: dedupe(candidates, caps)?,
        certificate,
    })
}

/// Submodules of the cogenerator of length at most `max_length`, in lattice order.
fn candidates(
    algebra: &Arc<FiniteAlgebra>,
    bounds: &[usize],
    max_length: usize,
    caps: &Caps,
) -> Result<(Vec<RightModule>, Certificate)> {
    let labels = algebra.simple_labels();
    if bounds.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            context: "one socle bound per simple module",
            expected: labels.len(),
            found: bounds.len(),
        });
    }
    let mut parts = Vec::new();
    let mut cogenerator = Vec::new();
    for (&label, &copies) in labels.iter().zip(bounds) {
        if copies > 0 {
            let e = indecomposable_injective(algebra, label)?;
            parts.extend(std::iter::repeat_n(e, copies));
            cogenerator.push((label, copies));
        }
    }
    let cog = if parts.is_empty() {
        RightModule::zero(algebra)
    } else {
        DirectSum::new(&parts.iter().collect::<Vec<_>>())?.module
    };
    let (subs, partial): (Vec<Submodule>, bool) = match cog.submodule_lattice(caps) {
        Ok(l) => (l, false),
        Err(Error::CapExceeded { resource: "submodule lattice", .. }) => {
            let mut c = cog.cyclic_submodules(caps)?;
            c.insert(0, cog.zero_submodule());
            (c, true)
        }
        Err(e) => return Err(e),
    };
    let examined = subs.len();
    let modules = subs.iter().filter(|s| s.dim() <= max_length).map(|s| cog.restrict(s)).collect();
    Ok((modules, Certificate { cogenerator, cogenerator_dim: cog.dim(), submodules_examined: examined, partial }))
}

/// A census with the property profile of every representative.
#[derive(Clone, Debug)]
pub struct CensusAnalysis {
    pub census: Census,
    pub profiles: Vec<PropertyProfile>,
}

impl CensusAnalysis {
    pub fn new(census: Census, caps: &Caps) -> Result<Self> {
        let profiles = census
            .representatives
            .par_iter()
            .map(|m| m.property_profile(caps))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { census, profiles })
    }

    pub fn universe(&self) -> String {
        self.census.universe()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RightModule, &PropertyProfile)> {
        self.census.representatives.iter().zip(&self.profiles)
    }

    pub fn is_partial(&self) -> bool {
        self.census.certificate.partial || self.profiles.iter().any(|p| !p.is_complete())
    }
}
