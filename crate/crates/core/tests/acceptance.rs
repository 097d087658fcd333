use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::sync::Arc;

use modlab::algebra::{r3, r4};
use modlab::envelope::indecomposable_injective;
use modlab::modules::{DirectSum, Multiset};
use modlab::report::{CensusSummary, Report};
use modlab::theorems::{
    b_module, run_suite, scenario_example1, scenario_example2, CensusAnalysis, Outcome, SinghPanel, Suite,
    SuiteResult, TheoremVerdict,
};
use modlab::{Caps, FiniteAlgebra, PrimeField, RightModule};

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ms(pairs: &[(usize, usize)]) -> Multiset {
    Multiset(pairs.iter().copied().collect::<BTreeMap<_, _>>())
}

fn failed_assertions(v: &TheoremVerdict) -> Check {
    let bad: Vec<String> =
        v.assertions.iter().filter(|a| !a.ok).map(|a| format!("{}: {} != {}", a.name, a.actual, a.expected)).collect();
    ensure(v.holds && bad.is_empty(), || format!("{} failed: {}", v.id, bad.join("; ")))
}

fn unit_bounds(an: &CensusAnalysis) -> bool {
    an.census.bounds.iter().all(|&b| b == 1)
}

fn prime(an: &CensusAnalysis) -> u32 {
    an.census.algebra.field().p()
}

fn verdict<'a>(res: &'a SuiteResult, id: &str, an: &CensusAnalysis) -> Result<&'a TheoremVerdict, String> {
    let universe = an.universe();
    res.verdicts
        .iter()
        .find(|v| v.id == id && v.universe == universe)
        .ok_or_else(|| format!("no {id} verdict on {universe}"))
}

fn holds(res: &SuiteResult, id: &str, an: &CensusAnalysis) -> Check {
    let v = verdict(res, id, an)?;
    ensure(v.holds && v.outcome == Outcome::Holds, || format!("{id} on {}: {:?}", v.universe, v.outcome))
}

/// Scans every representative; `bad` returns a description for a violation, and an undecided flag
/// counts as a violation too.
fn scan(ans: &[&CensusAnalysis], bad: impl Fn(&modlab::PropertyProfile) -> Option<Option<String>>) -> Check {
    for an in ans {
        for (i, (_, p)) in an.entries().enumerate() {
            match bad(p) {
                None => return Err(format!("undecided flag on {} #{i}", an.universe())),
                Some(Some(why)) => return Err(format!("{why} on {} #{i}", an.universe())),
                Some(None) => {}
            }
        }
    }
    Ok(())
}

fn implies(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    Some(!a? || b?)
}

fn example1(caps: &Caps) -> Check {
    failed_assertions(&scenario_example1(caps).map_err(|e| e.to_string())?)?;
    let a = r3(PrimeField::gf2());
    let run = || -> modlab::Result<Check> {
        let m = RightModule::projective(&a, 1)?;
        let l1 = indecomposable_injective(&a, 2)?;
        let l2 = indecomposable_injective(&a, 3)?;
        let hull = m.injective_hull()?;
        let sum = DirectSum::new(&[&l1, &l2])?.module;
        let ai = hull.automorphism_invariance(caps)?;
        let got = (
            m.dim(),
            m.socle_labels(),
            hull.hull.is_isomorphic(&sum, caps)?.is_some(),
            (l1.composition_length(), l2.composition_length()),
            (l1.end_space()?.size(), l2.end_space()?.size()),
            l1.hom_space(&l2)?.dim(),
            (ai.end_size, ai.aut_size),
            (ai.decision.holds, m.is_quasi_injective()?.holds, m.is_uniform()),
        );
        let want = (3, ms(&[(2, 1), (3, 1)]), true, (2, 2), (2, 2), 0, (4, 1), (true, false, false));
        Ok(ensure(got == want, || format!("got {got:?}")))
    };
    run().map_err(|e| e.to_string())?
}

fn example2(caps: &Caps) -> Check {
    failed_assertions(&scenario_example2(caps).map_err(|e| e.to_string())?)?;
    let a = r4(PrimeField::gf2());
    let run = || -> modlab::Result<Check> {
        let b = b_module(&a)?;
        let hull = b.injective_hull()?;
        let ai = hull.automorphism_invariance(caps)?;
        let got =
            (b.composition_length(), hull.is_essential(), ai.aut_size, ai.decision.holds, b.is_local(), b.is_indecomposable(caps)?);
        let want = (5, true, 1, true, false, true);
        Ok(ensure(got == want, || format!("got {got:?}")))
    };
    run().map_err(|e| e.to_string())?
}

fn hierarchy(res: &SuiteResult) -> Check {
    let ans: Vec<&CensusAnalysis> = res.censuses.iter().filter(|an| unit_bounds(an)).collect();
    for an in &ans {
        holds(res, "hierarchy", an)?;
    }
    scan(&ans, |p| {
        let chain = [&p.injective, &p.quasi_injective, &p.pseudo_injective, &p.automorphism_invariant];
        for w in chain.windows(2) {
            if !implies(w[0].value, w[1].value)? {
                return Some(Some("hierarchy violation".into()));
            }
        }
        Some(None)
    })
}

fn boundary(res: &SuiteResult, caps: &Caps) -> Check {
    let (odd, even): (Vec<&CensusAnalysis>, Vec<&CensusAnalysis>) =
        res.censuses.iter().filter(|an| unit_bounds(an)).partition(|an| prime(an) == 3);
    ensure(odd.len() == 2 && even.len() == 2, || "expected two GF(3) and two GF(2) universes".into())?;
    for an in &odd {
        holds(res, "theorem_ai_iff_qi", an)?;
    }
    scan(&odd, |p| {
        let (ai, qi) = (p.automorphism_invariant.value?, p.quasi_injective.value?);
        Some((ai != qi).then(|| format!("AI = {ai}, QI = {qi}")))
    })?;
    let a = r3(PrimeField::gf2());
    let m = RightModule::projective(&a, 1).map_err(|e| e.to_string())?;
    let p = m.property_profile(caps).map_err(|e| e.to_string())?;
    ensure(p.automorphism_invariant.is_true() && p.quasi_injective.is_false(), || "e11R flags".into())?;
    let an = even
        .iter()
        .find(|an| an.census.algebra.vertex_count() == 3)
        .ok_or("no R3 census over GF(2)")?;
    let v = verdict(res, "theorem_ai_iff_qi", an)?;
    ensure(v.outcome == Outcome::ExpectedBoundary, || format!("outcome {:?}", v.outcome))?;
    let w = v.witness.as_ref().and_then(|w| w.module.as_ref()).ok_or("boundary verdict has no module")?;
    let w = w.rebuild(&an.census.algebra).map_err(|e| e.to_string())?;
    ensure(w.is_isomorphic(&m, caps).map_err(|e| e.to_string())?.is_some(), || "boundary witness is not e11R".into())
}

fn goldie(res: &SuiteResult) -> Check {
    let ans: Vec<&CensusAnalysis> = res.censuses.iter().filter(|an| unit_bounds(an)).collect();
    ensure(ans.len() == 4, || format!("{} universes", ans.len()))?;
    for an in &ans {
        holds(res, "theorem_gd", an)?;
    }
    scan(&ans, |p| Some((!implies(p.automorphism_invariant.value, p.pseudo_injective.value)?).then(|| "AI but not PI".into())))
}

fn repeated_blocks(res: &SuiteResult) -> Check {
    let ans: Vec<&CensusAnalysis> = res.censuses.iter().collect();
    let mut repeated = 0;
    for an in &ans {
        holds(res, "lemma_tuk", an)?;
        holds(res, "corollary_square_free", an)?;
        repeated += verdict(res, "lemma_tuk", an)?.instances_checked;
    }
    ensure(repeated > 0, || "no representative has a repeated hull block".into())?;
    scan(&ans, |p| {
        let hit = p.automorphism_invariant.value? && p.indecomposable.value? && !p.square_free_socle.value?;
        Some(hit.then(|| "indecomposable AI module with repeated socle label".into()))
    })
}

fn lee_zhou(res: &SuiteResult) -> Check {
    let ans: Vec<&CensusAnalysis> = res.censuses.iter().collect();
    for an in &ans {
        holds(res, "lee_zhou", an)?;
    }
    scan(&ans, |p| {
        let ai = p.automorphism_invariant.value;
        if !implies(ai, p.c3.value)? {
            return Some(Some("AI but not C3".into()));
        }
        let cs_ai = Some(p.cs.value? && ai?);
        Some((!implies(cs_ai, p.quasi_injective.value)?).then(|| "CS and AI but not QI".into()))
    })
}

/// Every subspace of `GF(2)^n` for `n <= 6`, each stored as the bitmask of its 2^k elements.
fn all_subspaces(n: usize) -> Vec<u64> {
    let mut seen: HashSet<u64> = HashSet::from([1]);
    let mut frontier = vec![1u64];
    while let Some(s) = frontier.pop() {
        for v in 0..(1usize << n) {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut t = s;
            for x in 0..(1usize << n) {
                if s >> x & 1 == 1 {
                    t |= 1 << (x ^ v);
                }
            }
            if seen.insert(t) {
                frontier.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

fn encode(v: &[u8]) -> usize {
    v.iter().enumerate().fold(0, |acc, (i, &x)| acc | (usize::from(x) << i))
}

fn lattice_oracle(m: &RightModule, subspaces: &BTreeMap<usize, Vec<u64>>, caps: &Caps) -> Check {
    let n = m.dim();
    // image of each basis vector under each algebra basis element, as bitmasks
    let images: Vec<Vec<usize>> = m.action().iter().map(|r| (0..n).map(|i| encode(r.row(i))).collect()).collect();
    let act = |img: &[usize], x: usize| (0..n).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ img[i]);
    let mut oracle: Vec<u64> = subspaces[&n]
        .iter()
        .copied()
        .filter(|&s| {
            (0..(1usize << n))
                .filter(|x| s >> x & 1 == 1)
                .all(|x| images.iter().all(|img| s >> act(img, x) & 1 == 1))
        })
        .collect();
    let lattice = m.submodule_lattice(caps).map_err(|e| e.to_string())?;
    let mut ours = Vec::with_capacity(lattice.len());
    for sub in &lattice {
        let elems = sub.space().enumerate_vectors(caps.vectors).map_err(|e| e.to_string())?;
        ours.push(elems.iter().fold(0u64, |acc, v| acc | 1 << encode(v)));
    }
    oracle.sort_unstable();
    ours.sort_unstable();
    ensure(oracle == ours, || format!("lattice has {} members, oracle {}", ours.len(), oracle.len()))
}

fn oracles(res: &SuiteResult, caps: &Caps) -> Check {
    let subspaces: BTreeMap<usize, Vec<u64>> = (0..=6).map(|n| (n, all_subspaces(n))).collect();
    let mut compared = 0;
    for an in &res.censuses {
        for (i, m) in an.census.representatives.iter().enumerate() {
            let at = || format!("{} #{i}", an.universe());
            if prime(an) == 2 && m.dim() <= 6 {
                lattice_oracle(m, &subspaces, caps).map_err(|e| format!("{e} on {}", at()))?;
                compared += 1;
            }
            let by_lattice = m.is_uniserial_by_lattice(caps).map_err(|e| e.to_string())?;
            ensure(m.is_uniserial() == by_lattice, || format!("uniserial tests disagree on {}", at()))?;
            let hull = m.injective_hull().map_err(|e| e.to_string())?;
            ensure(hull.is_essential() && hull.transports_socle(), || format!("hull embedding on {}", at()))?;
            let again = hull.hull.injective_hull().map_err(|e| e.to_string())?;
            let idempotent = again.hull.dim() == hull.hull.dim() && again.blocks == hull.blocks;
            ensure(idempotent, || format!("hull of the hull grows on {}", at()))?;
        }
    }
    ensure(compared > 0, || "no module compared against the oracle".into())
}

fn singh_panel(res: &SuiteResult, vertices: usize) -> Result<(SinghPanel, Arc<FiniteAlgebra>), String> {
    let an = res
        .censuses
        .iter()
        .find(|an| unit_bounds(an) && prime(an) == 2 && an.census.algebra.vertex_count() == vertices)
        .ok_or("missing GF(2) census")?;
    holds(res, "theorem_singh", an)?;
    let data = verdict(res, "theorem_singh", an)?.data.clone().ok_or("singh verdict has no panel")?;
    let panel = serde_json::from_value(data).map_err(|e| e.to_string())?;
    Ok((panel, an.census.algebra.clone()))
}

fn singh(res: &SuiteResult, caps: &Caps) -> Check {
    let (p3, _) = singh_panel(res, 3)?;
    let r3_ok = p3.uniform_simple_or_injective_length_2
        && p3.left_serial
        && p3.radical_homogeneous_or_short
        && p3.all_indecomposables_local;
    ensure(r3_ok, || format!("R3 panel {p3:?}"))?;
    let (p4, a4) = singh_panel(res, 4)?;
    ensure(!p4.all_indecomposables_local, || "R4 census has only local indecomposables".into())?;
    ensure(p4.radical_lengths.contains(&(1, 3)), || format!("R4 radical lengths {:?}", p4.radical_lengths))?;
    let run = || -> modlab::Result<Check> {
        let p1 = RightModule::projective(&a4, 1)?;
        let rad = p1.restrict(&p1.radical());
        let found = p4.non_local_indecomposable.as_ref().map(|d| d.rebuild(&a4)).transpose()?;
        let b = b_module(&a4)?;
        let is_b = match found {
            Some(m) => m.is_isomorphic(&b, caps)?.is_some(),
            None => false,
        };
        Ok(ensure(rad.composition_length() == 3 && is_b, || "non-local indecomposable is not B".into()))
    };
    run().map_err(|e| e.to_string())?
}

fn report(res: &SuiteResult) -> String {
    let mut r = Report::new("paper all");
    r.censuses = res.censuses.iter().map(CensusSummary::of).collect();
    r.verdicts = res.verdicts.clone();
    r.without_timing().to_json()
}

fn main() -> ExitCode {
    let caps = Caps::default();
    let first = run_suite(Suite::All, &caps).expect("suite runs");
    let second = run_suite(Suite::All, &caps).expect("suite runs");
    let criteria: Vec<(&str, Check)> = vec![
        ("example1 fixture over R3/GF(2)", example1(&caps)),
        ("example2 fixture over R4/GF(2)", example2(&caps)),
        ("injective => QI => PI => AI on the R3 and R4 censuses", hierarchy(&first)),
        ("AI <=> QI over GF(3), e11R boundary over GF(2)", boundary(&first, &caps)),
        ("AI => pseudo-injective on all four rings", goldie(&first)),
        ("repeated hull blocks split, indecomposable AI has square-free socle", repeated_blocks(&first)),
        ("Lee-Zhou facts on every census", lee_zhou(&first)),
        ("lattice, uniserial and hull oracles", oracles(&first, &caps)),
        ("local indecomposables panel", singh(&first, &caps)),
        (
            "two suite runs give identical reports",
            ensure(report(&first) == report(&second), || "reports differ".into()),
        ),
    ];
    let mut ok = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                ok = false;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
