//! Versioned, self-describing run reports with text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteAlgebra;
use crate::envelope::{Flag, PropertyProfile};
use crate::modules::{is_left_serial, is_right_serial};
use crate::theorems::{CensusAnalysis, Certificate, TheoremVerdict};

pub const SCHEMA: &str = "modlab-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub field: u32,
    pub dim: usize,
    pub radical_dim: usize,
    pub radical_power_dims: Vec<usize>,
    pub basis: Vec<String>,
    pub idempotents: Vec<String>,
    pub left_serial: bool,
    pub right_serial: bool,
    pub checks: BTreeMap<String, bool>,
}

impl AlgebraSummary {
    pub fn of(a: &std::sync::Arc<FiniteAlgebra>) -> Self {
        Self {
            field: a.field().p(),
            dim: a.dim(),
            radical_dim: a.radical().dim(),
            radical_power_dims: a.radical_power_dims(),
            basis: (0..a.dim()).map(|t| a.label_name(t)).collect(),
            idempotents: a.idempotents().iter().map(|&(_, t)| a.label_name(t)).collect(),
            left_serial: is_left_serial(a),
            right_serial: is_right_serial(a),
            checks: a.verify().checks.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub name: String,
    pub profile: PropertyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub index: usize,
    pub dim: usize,
    pub length: usize,
    pub socle: String,
    pub top: String,
    pub flags: BTreeMap<String, Option<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub universe: String,
    pub certificate: Certificate,
    pub rows: Vec<CensusRow>,
}

/// Flags shown in census tables.
const CENSUS_FLAGS: [&str; 8] = [
    "injective",
    "quasi_injective",
    "pseudo_injective",
    "automorphism_invariant",
    "uniform",
    "uniserial",
    "local",
    "indecomposable",
];

impl CensusSummary {
    pub fn of(an: &CensusAnalysis) -> Self {
        let rows = an
            .profiles
            .iter()
            .enumerate()
            .map(|(index, p)| CensusRow {
                index,
                dim: p.dim,
                length: p.composition_length,
                socle: p.socle.to_string(),
                top: p.top.to_string(),
                flags: p
                    .flags()
                    .into_iter()
                    .filter(|(n, _)| CENSUS_FLAGS.contains(n))
                    .map(|(n, f)| (n.to_string(), f.value))
                    .collect(),
            })
            .collect();
        Self { universe: an.universe(), certificate: an.census.certificate.clone(), rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub censuses: Vec<CensusSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<TheoremVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cap_notices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn flag_text(f: &Flag) -> &'static str {
    match f.value {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    }
}

fn opt_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "y",
        Some(false) => "n",
        None => "?",
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            algebra: None,
            modules: Vec::new(),
            censuses: Vec::new(),
            verdicts: Vec::new(),
            cap_notices: Vec::new(),
            timing: None,
        }
    }

    pub fn without_timing(&self) -> Self {
        Self { timing: None, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn all_verdicts_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "modlab {} ({})", self.tool_version, self.command);
        if let Some(a) = &self.algebra {
            let _ = writeln!(w, "\nalgebra over GF({}): dim {}, radical dim {}", a.field, a.dim, a.radical_dim);
            let _ = writeln!(w, "  basis: {}", a.basis.join(" "));
            let _ = writeln!(w, "  idempotents: {}", a.idempotents.join(" "));
            let _ = writeln!(w, "  radical powers: {:?}", a.radical_power_dims);
            let _ = writeln!(w, "  left serial: {}, right serial: {}", a.left_serial, a.right_serial);
            for (name, ok) in &a.checks {
                let _ = writeln!(w, "  check {name}: {}", if *ok { "ok" } else { "FAILED" });
            }
        }
        for m in &self.modules {
            let p = &m.profile;
            let _ = writeln!(w, "\nmodule {}: dim {}, length {}, Goldie dimension {}", m.name, p.dim, p.composition_length, p.goldie_dimension);
            let _ = writeln!(w, "  socle {}, top {}, hull {} (dim {})", p.socle, p.top, p.hull_blocks, p.hull_dim);
            let size = |x: Option<u64>| x.map_or("undecided".to_string(), |n| n.to_string());
            let _ = writeln!(w, "  |End(E)| = {}, |Aut(E)| = {}", size(p.end_hull_size), size(p.aut_hull_size));
            for (name, f) in p.flags() {
                let _ = write!(w, "  {name}: {}", flag_text(f));
                if let Some(wit) = &f.witness {
                    let _ = write!(w, "  [{}]", serde_json::to_string(wit).expect("witness serializes"));
                }
                let _ = writeln!(w);
            }
            for (name, ok) in p.consistency_checks() {
                if !ok {
                    let _ = writeln!(w, "  INCONSISTENT: {name}");
                }
            }
        }
        for c in &self.censuses {
            let _ = writeln!(w, "\ncensus: {}", c.universe);
            let cog: Vec<String> = c.certificate.cogenerator.iter().map(|(l, m)| format!("E(S{l})^{m}")).collect();
            let _ = writeln!(
                w,
                "  cogenerator {} (dim {}), {} submodules examined",
                cog.join(" + "),
                c.certificate.cogenerator_dim,
                c.certificate.submodules_examined
            );
            let _ = writeln!(w, "  {:>3} {:>3} {:>3}  {:<16} {:<16} inj qi  pi  ai  unf usr loc ind", "#", "dim", "len", "socle", "top");
            for r in &c.rows {
                let f: Vec<&str> = CENSUS_FLAGS.iter().map(|n| opt_text(r.flags.get(*n).copied().flatten())).collect();
                let _ = writeln!(
                    w,
                    "  {:>3} {:>3} {:>3}  {:<16} {:<16} {}",
                    r.index,
                    r.dim,
                    r.length,
                    r.socle,
                    r.top,
                    f.iter().map(|s| format!("{s:<3}")).collect::<Vec<_>>().join(" ")
                );
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(w);
        }
        for v in &self.verdicts {
            let status = if v.holds { "PASS" } else { "FAIL" };
            let _ = writeln!(
                w,
                "[{status}] {} on {}: {:?}, {} instances ({} vacuous){}",
                v.id,
                v.universe,
                v.outcome,
                v.instances_checked,
                v.vacuous_instances,
                if v.partial { ", partial" } else { "" }
            );
            for a in v.assertions.iter().filter(|a| !a.ok) {
                let _ = writeln!(w, "    assertion {}: expected {}, found {}", a.name, a.expected, a.actual);
            }
            if let Some(wit) = &v.witness {
                let _ = writeln!(w, "    witness: {}", wit.detail);
            }
            for n in &v.notes {
                let _ = writeln!(w, "    note: {n}");
            }
        }
        for n in &self.cap_notices {
            let _ = writeln!(w, "cap: {n}");
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(w, "elapsed: {} ms", t.elapsed_ms);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::r3;
    use crate::caps::Caps;
    use crate::linalg::PrimeField;
    use crate::modules::RightModule;
    use crate::theorems::{build_census, scenario_example1};

    fn sample() -> Report {
        let caps = Caps::default();
        let a = r3(PrimeField::gf2());
        let mut r = Report::new("test");
        r.algebra = Some(AlgebraSummary::of(&a));
        let m = RightModule::projective(&a, 1).unwrap();
        r.modules.push(ModuleReport { name: "e11R".into(), profile: m.property_profile(&caps).unwrap() });
        let an = CensusAnalysis::new(build_census("R3", &a, &[1, 1, 1], 5, &caps).unwrap(), &caps).unwrap();
        r.censuses.push(CensusSummary::of(&an));
        r.verdicts.push(scenario_example1(&caps).unwrap());
        r.timing = Some(Timing { elapsed_ms: 12 });
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.schema, SCHEMA);
    }

    #[test]
    fn text_and_json_agree_on_flags() {
        let r = sample();
        let text = r.render_text();
        for (name, f) in r.modules[0].profile.flags() {
            assert!(text.contains(&format!("  {name}: {}", flag_text(f))), "{name}");
        }
        let a = r.algebra.as_ref().unwrap();
        assert!(text.contains(&format!("left serial: {}, right serial: {}", a.left_serial, a.right_serial)));
        assert!(text.contains("[PASS] example1"));
    }

    #[test]
    fn timing_is_the_only_volatile_field() {
        let mut a = sample();
        let mut b = a.clone();
        a.timing = Some(Timing { elapsed_ms: 1 });
        b.timing = Some(Timing { elapsed_ms: 2 });
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
    }
}
