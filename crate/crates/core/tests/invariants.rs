use std::sync::Arc;

use modlab::algebra::{r3, r4, upper_triangular};
use modlab::envelope::indecomposable_injective;
use modlab::modules::DirectSum;
use modlab::{Caps, FiniteAlgebra, Mat, PrimeField, RightModule, Subspace};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u32, 3, 5]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn mat_in(f: PrimeField, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(0..i64::from(f.p()), rows * cols).prop_map(move |e| Mat::from_vec(f, rows, cols, e).unwrap())
}

fn mat() -> impl Strategy<Value = Mat> {
    (field(), 0usize..6, 1usize..7).prop_flat_map(|(f, r, c)| mat_in(f, r, c))
}

fn algebra(which: usize, f: PrimeField) -> Arc<FiniteAlgebra> {
    match which {
        0 => r3(f),
        1 => r4(f),
        _ => upper_triangular(3, f),
    }
}

/// A small module from the standard families: simple, projective or injective at some vertex.
fn small_module(a: &Arc<FiniteAlgebra>, kind: usize, vertex: usize) -> RightModule {
    let v = 1 + vertex % a.vertex_count();
    match kind % 3 {
        0 => RightModule::simple(a, v).unwrap(),
        1 => RightModule::projective(a, v).unwrap(),
        _ => indecomposable_injective(a, v).unwrap(),
    }
}

fn invertible(f: PrimeField, n: usize) -> impl Strategy<Value = Mat> {
    mat_in(f, n, n).prop_filter("singular", |m| m.is_invertible().unwrap())
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_keeps_row_space(m in mat()) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref(), r.clone());
        prop_assert_eq!(Subspace::from_mat(r.matrix), Subspace::from_mat(m.clone()));
        prop_assert_eq!(r.rank, r.pivots.len());
    }

    #[test]
    fn rank_nullity(m in mat()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.transpose().apply(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.left_kernel().dim() + m.rank(), m.rows());
    }

    #[test]
    fn grassmann_identity((a, b) in (field(), 1usize..7, 0usize..5, 0usize..5)
        .prop_flat_map(|(f, n, r, s)| (mat_in(f, r, n), mat_in(f, s, n))))
    {
        let (u, w) = (Subspace::from_mat(a), Subspace::from_mat(b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subset(&u).unwrap() && u.is_subset(&sum).unwrap());
    }

    #[test]
    fn solve_recovers_consistent_systems((a, x) in (field(), 1usize..6, 1usize..6, 1usize..3)
        .prop_flat_map(|(f, r, c, k)| (mat_in(f, r, c), mat_in(f, c, k))))
    {
        let b = a.mul(&x);
        let sol = a.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(a.mul(&sol.particular), b);
        prop_assert_eq!(sol.kernel, a.kernel());
    }

    #[test]
    fn inverse_is_two_sided(m in (field(), 1usize..6).prop_flat_map(|(f, n)| invertible(f, n))) {
        let inv = m.inverse().unwrap().unwrap();
        let id = Mat::identity(m.field(), m.rows());
        prop_assert_eq!(m.mul(&inv), id.clone());
        prop_assert_eq!(inv.mul(&m), id);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spin_is_the_least_submodule(which in 0usize..3, p in prop::sample::select(vec![2u32, 3]),
                                   seed in prop::collection::vec(0i64..3, 7))
    {
        let f = PrimeField::new(p).unwrap();
        let m = RightModule::regular(&algebra(which, f));
        let v: Vec<u8> = seed.iter().cycle().take(m.dim()).map(|&x| f.reduce(x)).collect();
        let s = m.spin([v.as_slice()]);
        prop_assert!(s.contains(&v));
        prop_assert!(m.is_closed(s.space()));
        prop_assert_eq!(m.spin(s.space().basis_vectors()), s);
    }

    #[test]
    fn invariants_survive_basis_change((which, kind, vertex, g) in (0usize..3, 0usize..3, 0usize..4, prop::sample::select(vec![2u32, 3]))
        .prop_flat_map(|(w, k, v, p)| {
            let f = PrimeField::new(p).unwrap();
            let n = small_module(&algebra(w, f), k, v).dim();
            (Just(w), Just(k), Just(v), invertible(f, n))
        }))
    {
        let a = algebra(which, g.field());
        let m = small_module(&a, kind, vertex);
        let n = m.change_basis(&g).unwrap();
        let caps = Caps::default();
        prop_assert!(m.is_isomorphic(&n, &caps).unwrap().is_some());
        prop_assert_eq!(m.end_space().unwrap().dim(), n.end_space().unwrap().dim());
        prop_assert_eq!(m.socle_labels(), n.socle_labels());
        prop_assert_eq!(m.composition_factors(), n.composition_factors());
        prop_assert_eq!(m.submodule_lattice(&caps).unwrap().len(), n.submodule_lattice(&caps).unwrap().len());
        prop_assert_eq!(m.property_profile(&caps).unwrap().flags().iter().map(|(k, f)| (*k, f.value)).collect::<Vec<_>>(),
                        n.property_profile(&caps).unwrap().flags().iter().map(|(k, f)| (*k, f.value)).collect::<Vec<_>>());
    }

    #[test]
    fn hom_is_additive(which in 0usize..3, p in prop::sample::select(vec![2u32, 3]), picks in prop::collection::vec((0usize..3, 0usize..4), 3)) {
        let a = algebra(which, PrimeField::new(p).unwrap());
        let [x, y, z] = [0, 1, 2].map(|i| small_module(&a, picks[i].0, picks[i].1));
        let yz = DirectSum::new(&[&y, &z]).unwrap().module;
        let hom = |s: &RightModule, t: &RightModule| s.hom_space(t).unwrap().dim();
        prop_assert_eq!(hom(&x, &yz), hom(&x, &y) + hom(&x, &z));
        prop_assert_eq!(hom(&yz, &x), hom(&y, &x) + hom(&z, &x));
        for h in x.hom_space(&y).unwrap().basis() {
            prop_assert!(h.is_intertwining(&x, &y));
        }
    }

    #[test]
    fn hulls_are_essential_injective_and_stable(which in 0usize..3, p in prop::sample::select(vec![2u32, 3]),
                                                seeds in prop::collection::vec(prop::collection::vec(0i64..3, 7), 1..3))
    {
        let f = PrimeField::new(p).unwrap();
        let r = RightModule::regular(&algebra(which, f));
        let vs: Vec<Vec<u8>> = seeds.iter().map(|s| s.iter().cycle().take(r.dim()).map(|&x| f.reduce(x)).collect()).collect();
        let m = r.restrict(&r.spin(vs.iter().map(Vec::as_slice)));
        let hull = m.injective_hull().unwrap();
        prop_assert!(hull.embedding.is_injective());
        prop_assert!(hull.embedding.is_intertwining(&m, &hull.hull));
        prop_assert!(hull.is_essential() && hull.transports_socle());
        prop_assert!(hull.hull.is_injective().unwrap());
        prop_assert_eq!(hull.hull_labels(), m.socle_labels());
        let caps = Caps::default();
        let prof = m.property_profile(&caps).unwrap();
        prop_assert!(prof.is_consistent());
        prop_assert_eq!(m.is_uniserial(), m.is_uniserial_by_lattice(&caps).unwrap());
        prop_assert_eq!(m.is_uniform(), m.is_uniform_by_lattice(&caps).unwrap());
    }
}
