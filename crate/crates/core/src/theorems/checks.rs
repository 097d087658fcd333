use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{CensusAnalysis, ModuleData, Outcome, TheoremVerdict, VerdictWitness};
use crate::caps::Caps;
use crate::envelope::{Flag, InjectiveHull};
use crate::error::Result;
use crate::linalg::{Mat, Subspace};
use crate::modules::{is_left_serial, ModuleHom, RightModule, Submodule};

fn start(id: &str, an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = TheoremVerdict::new(id, an.universe());
    v.partial = an.is_partial();
    v
}

fn note_violations(v: &mut TheoremVerdict, count: usize) {
    if count > 1 {
        v.notes.push(format!("{count} violations in total"));
    }
}

fn ai_entries(an: &CensusAnalysis) -> impl Iterator<Item = (&RightModule, &crate::envelope::PropertyProfile)> {
    an.entries().filter(|(_, p)| p.automorphism_invariant.is_true())
}

/// Copy positions in `mask`.
fn copies(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `M ∩ E_S` for the block span `E_S` of the copies in `mask`.
fn meet(hull: &InjectiveHull, mask: u32) -> Subspace {
    let n = hull.block_ranges.len();
    hull.image().space().intersect(&hull.block_span(&copies(mask, n))).expect("same ambient")
}

fn is_ai(m: &RightModule, caps: &Caps) -> Result<bool> {
    Ok(m.is_automorphism_invariant(caps)?.decision.holds)
}

/// Injective ⇒ quasi-injective ⇒ pseudo-injective ⇒ automorphism-invariant on every representative.
pub fn check_hierarchy(an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = start("hierarchy", an);
    let mut violations = 0;
    for (m, p) in an.entries() {
        let chain: [(&str, &Flag); 4] = [
            ("injective", &p.injective),
            ("quasi-injective", &p.quasi_injective),
            ("pseudo-injective", &p.pseudo_injective),
            ("automorphism-invariant", &p.automorphism_invariant),
        ];
        if chain.iter().any(|(_, f)| f.value.is_none()) {
            v.vacuous_instances += 1;
        }
        v.instances_checked += 1;
        for i in 0..4 {
            for j in i + 1..4 {
                if chain[i].1.is_true() && chain[j].1.is_false() {
                    violations += 1;
                    v.fail(
                        VerdictWitness::new(format!("{} but not {}", chain[i].0, chain[j].0))
                            .with_module(m)
                            .with_evidence(chain[j].1.witness.clone()),
                    );
                }
            }
        }
    }
    note_violations(&mut v, violations);
    v
}

/// For AI `M` and every regrouping `E = E_S ⊕ E_S'` of the hull blocks, `π_S(M)` is AI.
pub fn check_lemma_projection(an: &CensusAnalysis, caps: &Caps) -> Result<TheoremVerdict> {
    let mut v = start("lemma_projection", an);
    let mut violations = 0;
    for (m, _) in ai_entries(an) {
        let hull = m.injective_hull()?;
        let n = hull.block_ranges.len();
        for mask in 1..(1u32 << n) {
            let p = hull.block_projection(&copies(mask, n));
            let image = Submodule(hull.image().space().image(&p));
            let part = hull.hull.restrict(&image);
            v.instances_checked += 1;
            if !is_ai(&part, caps)? {
                violations += 1;
                v.fail(VerdictWitness::new(format!("projection onto blocks {:?} is not AI", copies(mask, n))).with_module(m));
            }
        }
    }
    note_violations(&mut v, violations);
    Ok(v)
}

/// Some automorphism `σ` of `E` with `1 - σ` also an automorphism.
fn has_complementary_unit(e: &RightModule, caps: &Caps) -> Result<bool> {
    let id = Mat::identity(e.field(), e.dim());
    let found = e.end_space()?.for_each(caps, |s| {
        if s.rank() == s.rows() && id.sub(s).rank() == s.rows() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found.is_break())
}

/// For AI `M` and a block split `E = E1 ⊕ E2` where `E1` has an automorphism `σ1` with
/// `1 - σ1` invertible: `M = (M ∩ E1) ⊕ (M ∩ E2)`.
pub fn check_lemma_decomposition(an: &CensusAnalysis, caps: &Caps) -> Result<TheoremVerdict> {
    let mut v = start("lemma_decomposition", an);
    let mut cache: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut violations = 0;
    for (m, _) in ai_entries(an) {
        let hull = m.injective_hull()?;
        let n = hull.block_ranges.len();
        let full = (1u32 << n) - 1;
        for mask in 1..full {
            let key: Vec<usize> = copies(mask, n).iter().map(|&c| hull.block_ranges[c].0).collect();
            let applies = match cache.get(&key) {
                Some(&b) => b,
                None => {
                    let e1 = hull.hull.restrict(&Submodule(hull.block_span(&copies(mask, n))));
                    let b = has_complementary_unit(&e1, caps)?;
                    cache.insert(key, b);
                    b
                }
            };
            v.instances_checked += 1;
            if !applies {
                v.vacuous_instances += 1;
                continue;
            }
            let (a, b) = (meet(&hull, mask), meet(&hull, full ^ mask));
            if a.dim() + b.dim() != m.dim() {
                violations += 1;
                v.fail(
                    VerdictWitness::new(format!(
                        "blocks {:?}: dim(M∩E1) + dim(M∩E2) = {} + {} ≠ {}",
                        copies(mask, n),
                        a.dim(),
                        b.dim(),
                        m.dim()
                    ))
                    .with_module(m),
                );
            }
        }
    }
    note_violations(&mut v, violations);
    Ok(v)
}

/// AI ⇔ QI over fields with more than two elements; over GF(2) an AI module that is not
/// QI is the expected boundary.
pub fn check_theorem_ai_iff_qi(an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = start("theorem_ai_iff_qi", an);
    let p = an.census.algebra.field().p();
    let mut boundary: Vec<&RightModule> = Vec::new();
    let mut violations = 0;
    for (m, prof) in an.entries() {
        let (ai, qi) = (prof.automorphism_invariant.value, prof.quasi_injective.value);
        let (Some(ai), Some(qi)) = (ai, qi) else {
            v.vacuous_instances += 1;
            continue;
        };
        v.instances_checked += 1;
        if ai == qi {
            continue;
        }
        if p == 2 && ai {
            boundary.push(m);
        } else {
            violations += 1;
            v.fail(
                VerdictWitness::new(format!("AI = {ai}, QI = {qi} over GF({p})"))
                    .with_module(m)
                    .with_evidence(prof.quasi_injective.witness.clone()),
            );
        }
    }
    note_violations(&mut v, violations);
    if let Some(first) = boundary.first() {
        v.set_outcome(Outcome::ExpectedBoundary);
        if v.witness.is_none() {
            v.witness = Some(VerdictWitness::new("automorphism-invariant but not quasi-injective over GF(2)").with_module(first));
        }
        v.notes.push(format!("{} AI modules are not QI over GF(2)", boundary.len()));
    }
    v
}

/// Two equal hull blocks force a three-way splitting, and indecomposable AI modules have
/// square-free socle.
pub fn check_lemma_tuk(an: &CensusAnalysis) -> Result<[TheoremVerdict; 2]> {
    let mut lemma = start("lemma_tuk", an);
    let mut cor = start("corollary_square_free", an);
    let mut violations = 0;
    for (m, prof) in ai_entries(an) {
        if prof.indecomposable.is_true() {
            cor.instances_checked += 1;
            if !prof.socle.is_square_free() {
                cor.fail(VerdictWitness::new(format!("socle {} is not square-free", prof.socle)).with_module(m));
            }
        }
        let hull = m.injective_hull()?;
        let n = hull.block_ranges.len();
        let mut repeated = false;
        for i in 0..n {
            for j in i + 1..n {
                if hull.block_ranges[i].0 != hull.block_ranges[j].0 {
                    continue;
                }
                repeated = true;
                lemma.instances_checked += 1;
                let (m1, m2) = (1u32 << i, 1u32 << j);
                let rest = ((1u32 << n) - 1) ^ m1 ^ m2;
                let dims = [meet(&hull, m1).dim(), meet(&hull, m2).dim(), meet(&hull, rest).dim()];
                if dims.iter().sum::<usize>() != m.dim() {
                    violations += 1;
                    lemma.fail(
                        VerdictWitness::new(format!("copies {i}, {j}: intersections have dims {dims:?}, dim M = {}", m.dim()))
                            .with_module(m),
                    );
                }
            }
        }
        if !repeated {
            lemma.vacuous_instances += 1;
        }
    }
    note_violations(&mut lemma, violations);
    Ok([lemma, cor])
}

/// Indecomposable AI: uniform and QI, or every simple submodule has a two-element endomorphism ring.
pub fn check_corollary_uniform_or_f2(an: &CensusAnalysis) -> Result<TheoremVerdict> {
    let mut v = start("corollary_uniform_or_f2", an);
    let a = &an.census.algebra;
    let (mut first, mut second) = (0, 0);
    for (m, prof) in ai_entries(an).filter(|(_, p)| p.indecomposable.is_true()) {
        v.instances_checked += 1;
        if prof.uniform.is_true() && prof.quasi_injective.is_true() {
            first += 1;
            continue;
        }
        let mut two = true;
        for label in prof.socle.labels() {
            two &= RightModule::simple(a, label)?.end_space()?.size() == 2;
        }
        if two {
            second += 1;
        } else {
            v.fail(VerdictWitness::new("neither uniform quasi-injective nor over a two-element division ring").with_module(m));
        }
    }
    v.notes.push(format!("{first} uniform and quasi-injective, {second} with End(S) of order 2 only"));
    Ok(v)
}

/// AI ⇒ pseudo-injective for every representative (all have finite Goldie dimension).
pub fn check_theorem_gd(an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = start("theorem_gd", an);
    let mut violations = 0;
    for (m, prof) in ai_entries(an) {
        v.instances_checked += 1;
        match prof.pseudo_injective.value {
            None => v.vacuous_instances += 1,
            Some(true) => {}
            Some(false) => {
                violations += 1;
                v.fail(
                    VerdictWitness::new("automorphism-invariant but not pseudo-injective")
                        .with_module(m)
                        .with_evidence(prof.pseudo_injective.witness.clone()),
                );
            }
        }
    }
    note_violations(&mut v, violations);
    v
}

/// Splittings `M = M1 ⊕ M2` from idempotent endomorphisms and from hull block regroupings.
fn splittings(m: &RightModule, hull: &InjectiveHull, caps: &Caps) -> Result<Vec<(Submodule, Submodule)>> {
    let mut out: BTreeSet<(Submodule, Submodule)> = BTreeSet::new();
    let id = Mat::identity(m.field(), m.dim());
    for e in m.idempotent_endos(caps)? {
        let a = Submodule(m.image(&e));
        if a.is_zero() || a.dim() == m.dim() {
            continue;
        }
        let b = Submodule(m.image(&ModuleHom::new(id.sub(&e.matrix))));
        out.insert((a, b));
    }
    // block splits, pulled back to the coordinates of M
    let n = hull.block_ranges.len();
    let full = (1u32 << n).wrapping_sub(1);
    for mask in 1..full {
        let (x, y) = (meet(hull, mask), meet(hull, full ^ mask));
        if x.is_zero() || y.is_zero() || x.dim() + y.dim() != m.dim() {
            continue;
        }
        let pull = |s: &Subspace| -> Submodule {
            let rows: Vec<Vec<u8>> = s.basis_vectors().map(|w| pull_back(hull, w)).collect();
            Submodule(Subspace::span(m.field(), m.dim(), rows.iter().map(|r| r.as_slice())))
        };
        out.insert((pull(&x), pull(&y)));
    }
    Ok(out.into_iter().collect())
}

/// Preimage under `ι` of a vector of `ι(M)`.
fn pull_back(hull: &InjectiveHull, w: &[u8]) -> Vec<u8> {
    let iota = &hull.embedding.matrix;
    let rhs = Mat::from_row_vecs(iota.field(), iota.cols(), [w]).transpose();
    let sol = iota.transpose().solve(&rhs).expect("shapes agree").expect("vector lies in the image");
    sol.particular.transpose().row(0).to_vec()
}

/// Facts about AI modules: summands are AI; AI ⇒ C3; CS ∧ AI ⇒ QI; the two parts of any
/// splitting are injective relative to each other.
pub fn check_lee_zhou(an: &CensusAnalysis, caps: &Caps) -> Result<TheoremVerdict> {
    let mut v = start("lee_zhou", an);
    let mut violations = 0;
    for (m, prof) in ai_entries(an) {
        v.instances_checked += 1;
        if prof.c3.is_false() {
            violations += 1;
            v.fail(VerdictWitness::new("AI but not C3").with_module(m).with_evidence(prof.c3.witness.clone()));
        }
        if prof.cs.is_true() && prof.quasi_injective.is_false() {
            violations += 1;
            v.fail(VerdictWitness::new("CS and AI but not QI").with_module(m));
        }
        for d in m.summands(caps)? {
            if d.is_zero() || d.dim() == m.dim() {
                continue;
            }
            v.instances_checked += 1;
            if !is_ai(&m.restrict(&d), caps)? {
                violations += 1;
                v.fail(VerdictWitness::new(format!("summand of dimension {} is not AI", d.dim())).with_module(m));
            }
        }
        let hull = m.injective_hull()?;
        for (a, b) in splittings(m, &hull, caps)? {
            let (ma, mb) = (m.restrict(&a), m.restrict(&b));
            v.instances_checked += 1;
            for (x, y, what) in [(&ma, &mb, "M1 is not M2-injective"), (&mb, &ma, "M2 is not M1-injective")] {
                let d = x.is_relatively_injective(y, caps)?;
                if !d.holds {
                    violations += 1;
                    v.fail(VerdictWitness::new(what).with_module(m).with_evidence(d.witness));
                }
            }
        }
    }
    note_violations(&mut v, violations);
    Ok(v)
}

/// Searches the AI representatives for a failure of C2.
pub fn explore_question_c2(an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = start("question_c2", an);
    v.set_outcome(Outcome::NoCounterexample);
    for (m, prof) in an.entries() {
        // quasi-injective modules are continuous, so C2 must hold there
        if prof.quasi_injective.is_true() && prof.c2.is_false() {
            v.fail(VerdictWitness::new("quasi-injective but not C2").with_module(m).with_evidence(prof.c2.witness.clone()));
        }
    }
    for (m, prof) in ai_entries(an) {
        v.instances_checked += 1;
        match prof.c2.value {
            None => v.vacuous_instances += 1,
            Some(true) => {}
            Some(false) => {
                if v.outcome == Outcome::NoCounterexample {
                    v.set_outcome(Outcome::CounterexampleFound);
                    v.witness = Some(
                        VerdictWitness::new("automorphism-invariant module failing C2")
                            .with_module(m)
                            .with_evidence(prof.c2.witness.clone()),
                    );
                }
            }
        }
    }
    v
}

/// AI modules with essential socle that are not QI, emitted as data.
pub fn question_essential_socle_data(an: &CensusAnalysis) -> TheoremVerdict {
    let mut v = start("question_essential_socle", an);
    v.set_outcome(Outcome::DataOnly);
    let mut rows = Vec::new();
    for (m, prof) in ai_entries(an) {
        v.instances_checked += 1;
        if m.is_essential(&m.socle()) && prof.quasi_injective.is_false() {
            rows.push(serde_json::json!({
                "dim": m.dim(),
                "socle": prof.socle.to_string(),
                "top": prof.top.to_string(),
                "indecomposable": prof.indecomposable.value,
                "module": ModuleData::of(m),
            }));
        }
    }
    v.notes.push(format!("{} AI modules with essential socle are not QI", rows.len()));
    v.data = Some(serde_json::Value::Array(rows));
    v
}

/// Lemmas on quasi-projectivity over rings whose indecomposables are all AI.
pub fn check_lemma_l1_l2(an: &CensusAnalysis) -> Result<TheoremVerdict> {
    let mut v = start("lemma_l1_l2", an);
    let a = &an.census.algebra;
    if let Some((m, _)) = an.entries().find(|(_, p)| p.indecomposable.is_true() && !p.automorphism_invariant.is_true()) {
        v.set_outcome(Outcome::Inapplicable);
        v.witness = Some(VerdictWitness::new("indecomposable module that is not automorphism-invariant").with_module(m));
        return Ok(v);
    }
    for vertex in a.simple_labels() {
        let p = RightModule::projective(a, vertex)?;
        if p.is_uniform() {
            continue;
        }
        let soc = p.socle();
        for sub in p.submodule_lattice(&Caps::default())?.into_iter().filter(|s| s.is_subset(&soc)) {
            let labels: BTreeSet<usize> = p.labels_of(&sub).labels().collect();
            let mut comp = p.zero_submodule();
            for j in a.simple_labels().into_iter().filter(|j| !labels.contains(j)) {
                comp = comp.sum(&Submodule(soc.space().image(&p.idempotent_action(j))));
            }
            v.instances_checked += 1;
            if !sub.intersect(&comp).is_zero() || sub.dim() + comp.dim() != soc.dim() {
                v.fail(VerdictWitness::new(format!("Soc(e{vertex}{vertex}R) does not split off the complement")).with_module(&p));
                continue;
            }
            let (q, _) = p.quotient(&comp)?;
            let d = q.is_quasi_projective(&Caps::default())?;
            if !d.holds {
                v.fail(VerdictWitness::new(format!("e{vertex}{vertex}R/A' is not quasi-projective")).with_module(&q).with_evidence(d.witness));
            }
        }
    }
    for (m, prof) in an.entries().filter(|(_, p)| p.uniserial.is_true()) {
        v.instances_checked += 1;
        if prof.quasi_projective.is_false() {
            v.fail(VerdictWitness::new("uniserial but not quasi-projective").with_module(m).with_evidence(prof.quasi_projective.witness.clone()));
        }
    }
    Ok(v)
}

/// The conditions of the local-indecomposables theorem for radical-square-zero rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinghPanel {
    pub uniform_simple_or_injective_length_2: bool,
    pub left_serial: bool,
    pub radical_homogeneous_or_short: bool,
    /// `(vertex, l(e_vv J))`.
    pub radical_lengths: Vec<(usize, usize)>,
    pub all_indecomposables_local: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_local_indecomposable: Option<ModuleData>,
}

pub fn check_theorem_singh(an: &CensusAnalysis) -> Result<TheoremVerdict> {
    let mut v = start("theorem_singh", an);
    let a = &an.census.algebra;
    if a.radical_power_dims().len() > 1 {
        v.set_outcome(Outcome::Inapplicable);
        v.notes.push("J^2 is not zero".into());
        return Ok(v);
    }
    let mut cond_a = true;
    for (m, prof) in an.entries().filter(|(_, p)| p.uniform.is_true()) {
        v.instances_checked += 1;
        let ok = m.is_simple() || (prof.injective.is_true() && prof.composition_length == 2);
        if !ok && cond_a {
            v.notes.push(format!("(a) fails at a uniform module of dimension {}", m.dim()));
        }
        cond_a &= ok;
    }
    let cond_b = is_left_serial(a);
    let mut cond_c = true;
    let mut radical_lengths = Vec::new();
    for vertex in a.simple_labels() {
        let p = RightModule::projective(a, vertex)?;
        let labels = p.labels_of(&p.radical());
        let homogeneous = labels.0.len() <= 1;
        radical_lengths.push((vertex, labels.total()));
        cond_c &= homogeneous || labels.total() <= 2;
    }
    let non_local = an.entries().find(|(_, p)| p.indecomposable.is_true() && p.local.is_false()).map(|(m, _)| m);
    let all_local = non_local.is_none();
    let short = radical_lengths.iter().all(|&(_, l)| l <= 2);
    v.instances_checked += radical_lengths.len() + 1;
    if all_local && !(cond_a && cond_b && cond_c) {
        v.fail(VerdictWitness::new("all indecomposables are local but (a), (b) or (c) fails"));
    }
    if cond_a && cond_b && cond_c && short && !all_local {
        let w = VerdictWitness::new("(a), (b), (c) hold with l(eJ) <= 2 but an indecomposable is not local");
        v.fail(match non_local {
            Some(m) => w.with_module(m),
            None => w,
        });
    }
    let panel = SinghPanel {
        uniform_simple_or_injective_length_2: cond_a,
        left_serial: cond_b,
        radical_homogeneous_or_short: cond_c,
        radical_lengths,
        all_indecomposables_local: all_local,
        non_local_indecomposable: non_local.map(ModuleData::of),
    };
    v.data = Some(serde_json::to_value(&panel).expect("panel serializes"));
    Ok(v)
}
