use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::checks::*;
use super::{build_census, scenario_example1, scenario_example2, CensusAnalysis, TheoremVerdict};
use crate::algebra::{r3, r4, FiniteAlgebra};
use crate::caps::Caps;
use crate::error::Result;
use crate::linalg::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Example1,
    Example2,
    All,
}

/// A census specification.
#[derive(Clone, Debug)]
pub struct Universe {
    pub name: String,
    pub algebra: Arc<FiniteAlgebra>,
    pub bounds: Vec<usize>,
    pub max_length: usize,
    /// Run the ring-level checks (they need the full socle-bound-1 census).
    pub ring_checks: bool,
}

impl Universe {
    fn new(name: &str, algebra: Arc<FiniteAlgebra>, bounds: &[usize], max_length: usize, ring_checks: bool) -> Self {
        Self { name: name.to_string(), algebra, bounds: bounds.to_vec(), max_length, ring_checks }
    }
}

/// Universes for the `paper` command: both rings over GF(2) and GF(3) with one copy of each
/// indecomposable injective, plus small censuses with a doubled block.
pub fn standard_universes(suite: Suite) -> Result<Vec<Universe>> {
    let (f2, f3) = (PrimeField::gf2(), PrimeField::new(3)?);
    let r3_set = || {
        vec![
            Universe::new("R3", r3(f2), &[1, 1, 1], 6, true),
            Universe::new("R3", r3(f3), &[1, 1, 1], 6, true),
            Universe::new("R3", r3(f2), &[1, 2, 2], 6, false),
            Universe::new("R3", r3(f3), &[1, 2, 1], 6, false),
        ]
    };
    let r4_set = || {
        vec![
            Universe::new("R4", r4(f2), &[1, 1, 1, 1], 6, true),
            Universe::new("R4", r4(f3), &[1, 1, 1, 1], 6, true),
            Universe::new("R4", r4(f2), &[1, 2, 1, 1], 6, false),
            Universe::new("R4", r4(f3), &[0, 2, 1, 0], 6, false),
        ]
    };
    Ok(match suite {
        Suite::Example1 => r3_set(),
        Suite::Example2 => r4_set(),
        Suite::All => r3_set().into_iter().chain(r4_set()).collect(),
    })
}

pub struct SuiteResult {
    pub verdicts: Vec<TheoremVerdict>,
    pub censuses: Vec<CensusAnalysis>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn first_failure(&self) -> Option<&TheoremVerdict> {
        self.verdicts.iter().find(|v| !v.holds)
    }
}

/// Every census-quantified check on one analysed census.
pub fn census_checks(an: &CensusAnalysis, ring_checks: bool, caps: &Caps) -> Result<Vec<TheoremVerdict>> {
    let mut out = vec![
        check_hierarchy(an),
        check_lemma_projection(an, caps)?,
        check_lemma_decomposition(an, caps)?,
        check_theorem_ai_iff_qi(an),
    ];
    out.extend(check_lemma_tuk(an)?);
    out.push(check_corollary_uniform_or_f2(an)?);
    out.push(check_theorem_gd(an));
    out.push(check_lee_zhou(an, caps)?);
    out.push(explore_question_c2(an));
    out.push(question_essential_socle_data(an));
    if ring_checks {
        out.push(check_lemma_l1_l2(an)?);
        out.push(check_theorem_singh(an)?);
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, caps: &Caps) -> Result<SuiteResult> {
    let mut verdicts = Vec::new();
    if matches!(suite, Suite::Example1 | Suite::All) {
        verdicts.push(scenario_example1(caps)?);
    }
    if matches!(suite, Suite::Example2 | Suite::All) {
        verdicts.push(scenario_example2(caps)?);
    }
    let mut censuses = Vec::new();
    for u in standard_universes(suite)? {
        let census = build_census(&u.name, &u.algebra, &u.bounds, u.max_length, caps)?;
        let an = CensusAnalysis::new(census, caps)?;
        verdicts.extend(census_checks(&an, u.ring_checks, caps)?);
        censuses.push(an);
    }
    Ok(SuiteResult { verdicts, censuses })
}
