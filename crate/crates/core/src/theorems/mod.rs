//! Censuses of small modules and machine checks of the structure theorems over them.

mod census;
mod checks;
mod scenarios;
mod suite;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::envelope::Witness;
use crate::error::Result;
use crate::linalg::Mat;
use crate::modules::RightModule;

pub use census::{build_census, Census, CensusAnalysis, Certificate};
pub use checks::{
    check_corollary_uniform_or_f2, check_hierarchy, check_lee_zhou, check_lemma_decomposition, check_lemma_l1_l2,
    check_lemma_projection, check_lemma_tuk, check_theorem_ai_iff_qi, check_theorem_gd, check_theorem_singh,
    explore_question_c2, question_essential_socle_data, SinghPanel,
};
pub use scenarios::{b_module, scenario_example1, scenario_example2};
pub use suite::{census_checks, run_suite, standard_universes, Suite, SuiteResult, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    /// A known failure of the statement outside its hypotheses.
    ExpectedBoundary,
    NoCounterexample,
    CounterexampleFound,
    /// The statement's hypothesis does not hold for this universe.
    Inapplicable,
    /// Data is emitted without a verdict.
    DataOnly,
}

/// Action matrices of a module, enough to rebuild it over a known algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub dim: usize,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl ModuleData {
    pub fn of(m: &RightModule) -> Self {
        Self { dim: m.dim(), action: m.action().iter().map(Mat::to_i64_rows).collect() }
    }

    pub fn rebuild(&self, algebra: &Arc<FiniteAlgebra>) -> Result<RightModule> {
        let f = algebra.field();
        let action = self.action.iter().map(|rows| Mat::from_rows(f, self.dim, rows)).collect::<Result<Vec<_>>>()?;
        RightModule::new(algebra.clone(), self.dim, action)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictWitness {
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Witness>,
}

impl VerdictWitness {
    pub fn new(detail: impl Into<String>) -> Self {
        Self { detail: detail.into(), module: None, evidence: None }
    }

    pub fn with_module(mut self, m: &RightModule) -> Self {
        self.module = Some(ModuleData::of(m));
        self
    }

    pub fn with_evidence(mut self, w: Option<Witness>) -> Self {
        self.evidence = w;
        self
    }
}

/// One named claim with its expected and computed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub id: String,
    pub universe: String,
    pub instances_checked: usize,
    #[serde(default)]
    pub vacuous_instances: usize,
    pub outcome: Outcome,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<VerdictWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default)]
    pub partial: bool,
    /// Extra structured output specific to the check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl TheoremVerdict {
    pub fn new(id: impl Into<String>, universe: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            universe: universe.into(),
            instances_checked: 0,
            vacuous_instances: 0,
            outcome: Outcome::Holds,
            holds: true,
            witness: None,
            assertions: Vec::new(),
            notes: Vec::new(),
            partial: false,
            data: None,
        }
    }

    /// Records the first violation; later ones are only counted in `notes` by the caller.
    pub fn fail(&mut self, w: VerdictWitness) {
        if self.outcome != Outcome::Fails {
            self.outcome = Outcome::Fails;
            self.holds = false;
            self.witness = Some(w);
        }
    }

    pub fn assert_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, actual: T) {
        let ok = expected == actual;
        self.instances_checked += 1;
        self.assertions.push(Assertion {
            name: name.to_string(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            ok,
        });
        if !ok {
            self.fail(VerdictWitness::new(format!("{name}: expected {expected:?}, found {actual:?}")));
        }
    }

    pub fn set_outcome(&mut self, outcome: Outcome) {
        if self.outcome != Outcome::Fails {
            self.outcome = outcome;
        }
    }

    /// `holds = false` must come with a witness.
    pub fn is_well_formed(&self) -> bool {
        self.holds == (self.outcome != Outcome::Fails) && (self.holds || self.witness.is_some())
    }
}
