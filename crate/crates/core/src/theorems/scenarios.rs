use std::sync::Arc;

use super::TheoremVerdict;
use crate::algebra::{r3, r4, FiniteAlgebra, PosetPattern};
use crate::caps::Caps;
use crate::envelope::indecomposable_injective;
use crate::error::{Error, Result};
use crate::linalg::{Elem, PrimeField, Subspace};
use crate::modules::{is_left_serial, DirectSum, RightModule, Submodule};

/// Coordinates of the matrix unit `label` inside `e_vv·A`.
fn unit_in_projective(a: &Arc<FiniteAlgebra>, vertex: usize, label: (usize, usize)) -> Result<Vec<Elem>> {
    let regular = RightModule::regular(a);
    let e = a.idempotent_index(vertex)?;
    let p = regular.spin([a.basis_vector(e).as_slice()]);
    let t = a.label_index(label).ok_or(Error::IndexOutOfRange { index: label.1, n: a.vertex_count() })?;
    p.space()
        .coordinates(&a.basis_vector(t))
        .ok_or_else(|| Error::Internal(format!("e{}{} is not in e{vertex}{vertex}A", label.0, label.1)))
}

/// `e_vv·A / (label)·F`.
fn projective_mod(a: &Arc<FiniteAlgebra>, vertex: usize, label: (usize, usize)) -> Result<RightModule> {
    let p = RightModule::projective(a, vertex)?;
    let v = unit_in_projective(a, vertex, label)?;
    let sub = p.spin([v.as_slice()]);
    Ok(p.quotient(&sub)?.0)
}

/// A vector of the `k`-th block of a direct sum of uniform modules lying outside that block's socle.
fn top_vector(sum: &DirectSum, part: &RightModule, k: usize) -> Vec<Elem> {
    let soc = part.socle();
    let i = (0..part.dim())
        .find(|&i| {
            let mut v = vec![0; part.dim()];
            v[i] = 1;
            !soc.contains(&v)
        })
        .expect("block is not simple");
    let mut v = vec![0; sum.module.dim()];
    v[sum.blocks[k].start + i] = 1;
    v
}

struct ExampleTwo {
    e: RightModule,
    b1: Submodule,
    b2: Submodule,
    middle_socle: Subspace,
}

fn example_two(a: &Arc<FiniteAlgebra>) -> Result<ExampleTwo> {
    let parts: Vec<RightModule> = (2..=4).map(|i| indecomposable_injective(a, i)).collect::<Result<_>>()?;
    let sum = DirectSum::new(&parts.iter().collect::<Vec<_>>())?;
    let tops: Vec<Vec<Elem>> = (0..3).map(|k| top_vector(&sum, &parts[k], k)).collect();
    let f = a.field();
    let add = |x: &[Elem], y: &[Elem]| -> Vec<Elem> { x.iter().zip(y).map(|(&p, &q)| f.add(p, q)).collect() };
    let e = sum.module.clone();
    let b1 = e.spin([add(&tops[0], &tops[1]).as_slice()]);
    let b2 = e.spin([add(&tops[1], &tops[2]).as_slice()]);
    let mid = sum.blocks[1].clone();
    let rows: Vec<Vec<Elem>> = mid
        .map(|i| {
            let mut v = vec![0; e.dim()];
            v[i] = 1;
            v
        })
        .collect();
    let middle = Subspace::span(f, e.dim(), rows.iter().map(|v| v.as_slice()));
    let middle_socle = e.socle().space().intersect(&middle)?;
    Ok(ExampleTwo { e, b1, b2, middle_socle })
}

/// The module `B = B1 + B2 ⊆ E(S2) ⊕ E(S3) ⊕ E(S4)` over the four-vertex ring.
pub fn b_module(a: &Arc<FiniteAlgebra>) -> Result<RightModule> {
    let x = example_two(a)?;
    Ok(x.e.restrict(&x.b1.sum(&x.b2)))
}

pub fn scenario_example1(caps: &Caps) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("example1", "R3 over GF(2), with a truncated pattern and GF(3) variant");
    let a = r3(PrimeField::gf2());
    let m = RightModule::projective(&a, 1)?;
    v.assert_eq("dim e11R", 3, m.dim());
    v.assert_eq("socle labels of e11R", "{S2, S3}".to_string(), m.socle_labels().to_string());
    let e12 = unit_in_projective(&a, 1, (1, 2))?;
    let e13 = unit_in_projective(&a, 1, (1, 3))?;
    let soc_expected = Subspace::span(a.field(), 3, [e12.as_slice(), e13.as_slice()]);
    v.assert_eq("Soc(e11R) = e12F + e13F", true, *m.socle().space() == soc_expected);

    let l1 = indecomposable_injective(&a, 2)?;
    let l2 = indecomposable_injective(&a, 3)?;
    let hull = m.injective_hull()?;
    v.assert_eq("hull blocks", vec![(2, 1), (3, 1)], hull.blocks.clone());
    let l12 = DirectSum::new(&[&l1, &l2])?.module;
    v.assert_eq("E(e11R) = L1 + L2", true, hull.hull.is_isomorphic(&l12, caps)?.is_some());
    v.assert_eq("l(L1)", 2, l1.composition_length());
    v.assert_eq("l(L2)", 2, l2.composition_length());
    v.assert_eq("L1 injective", true, l1.is_injective()?);
    v.assert_eq("L2 injective", true, l2.is_injective()?);
    v.assert_eq("|End(L1)|", 2, l1.end_space()?.size());
    v.assert_eq("|End(L2)|", 2, l2.end_space()?.size());
    v.assert_eq("dim Hom(L1, L2)", 0, l1.hom_space(&l2)?.dim());
    v.assert_eq("dim Hom(L2, L1)", 0, l2.hom_space(&l1)?.dim());
    let ai = hull.automorphism_invariance(caps)?;
    v.assert_eq("|End(E)|", 4, ai.end_size);
    v.assert_eq("|Aut(E)|", 1, ai.aut_size);
    v.assert_eq("e11R automorphism-invariant", true, ai.decision.holds);
    v.assert_eq("e11R quasi-injective", false, hull.quasi_injectivity()?.holds);
    v.assert_eq("e11R uniform", false, m.is_uniform());
    v.assert_eq("e11R local", true, m.is_local());
    v.assert_eq("e11R indecomposable", true, m.is_indecomposable(caps)?);
    v.assert_eq("R3 left serial", true, is_left_serial(&a));

    // dropping (1, 3) from the pattern leaves e11R uniserial and equal to its hull
    let truncated = FiniteAlgebra::from_pattern(&PosetPattern::new(3, [(1, 2)])?, PrimeField::gf2());
    let t = RightModule::projective(&truncated, 1)?;
    let th = t.injective_hull()?;
    v.assert_eq("truncated: hull blocks", vec![(2, 1)], th.blocks.clone());
    v.assert_eq("truncated: hull dim", 2, th.hull.dim());
    v.assert_eq("truncated: e11R quasi-injective", true, th.quasi_injectivity()?.holds);

    let a3 = r3(PrimeField::new(3)?);
    let m3 = RightModule::projective(&a3, 1)?;
    let ai3 = m3.is_automorphism_invariant(caps)?;
    v.assert_eq("GF(3): |Aut(E)|", 4, ai3.aut_size);
    v.assert_eq("GF(3): e11R automorphism-invariant", false, ai3.decision.holds);
    Ok(v)
}

pub fn scenario_example2(caps: &Caps) -> Result<TheoremVerdict> {
    let mut v = TheoremVerdict::new("example2", "R4 over GF(2)");
    let a = r4(PrimeField::gf2());
    let x = example_two(&a)?;
    let b = x.b1.sum(&x.b2);
    let bm = x.e.restrict(&b);
    let a1 = projective_mod(&a, 1, (1, 4))?;
    let a2 = projective_mod(&a, 1, (1, 2))?;
    v.assert_eq("B1 = e11R/e14F", true, x.e.restrict(&x.b1).is_isomorphic(&a1, caps)?.is_some());
    v.assert_eq("B2 = e11R/e12F", true, x.e.restrict(&x.b2).is_isomorphic(&a2, caps)?.is_some());
    v.assert_eq("dim B", 5, bm.dim());
    v.assert_eq("l(B)", 5, bm.composition_length());
    v.assert_eq("B1 meet B2 = Soc(E2)", true, *x.b1.intersect(&x.b2).space() == x.middle_socle);
    v.assert_eq("B essential in E", true, x.e.is_essential(&b));
    let hull = bm.injective_hull()?;
    v.assert_eq("hull blocks of B", vec![(2, 1), (3, 1), (4, 1)], hull.blocks.clone());
    let ai = hull.automorphism_invariance(caps)?;
    v.assert_eq("|End(E)|", 8, ai.end_size);
    v.assert_eq("|Aut(E)|", 1, ai.aut_size);
    v.assert_eq("B automorphism-invariant", true, ai.decision.holds);
    v.assert_eq("B local", false, bm.is_local());
    v.assert_eq("B indecomposable", true, bm.is_indecomposable(caps)?);
    v.assert_eq("idempotents of End(B)", 2, bm.idempotent_endos(caps)?.len());
    Ok(v)
}
