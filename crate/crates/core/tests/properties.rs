mod common;

use proptest::prelude::*;
use smr_core::relations::enumerate_preorders;
use smr_core::{Matrix, Permutation, Relation, RingCtx};

use common::*;

fn arb_relation() -> impl Strategy<Value = Relation> {
    (1usize..=5).prop_flat_map(|n| {
        let width = n * n;
        (Just(n), 0u64..(1u64 << width)).prop_map(|(n, bits)| Relation::from_bits(n, bits).unwrap())
    })
}

fn arb_relation_pair() -> impl Strategy<Value = (Relation, Relation)> {
    (1usize..=5).prop_flat_map(|n| {
        let top = 1u64 << (n * n);
        (0..top, 0..top).prop_map(move |(a, b)| (Relation::from_bits(n, a).unwrap(), Relation::from_bits(n, b).unwrap()))
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn arb_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=3, prop::sample::select(vec![2u32, 3, 4, 6, 12])).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..m, n * n).prop_map(move |e| {
            let ctx = RingCtx::new(m).unwrap();
            let rows: Vec<&[u32]> = e.chunks(n).collect();
            Matrix::from_rows(ctx, &rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_extensive(r in arb_relation()) {
        let c = r.rt_closure();
        prop_assert!(r.is_subset(&c));
        prop_assert_eq!(c.rt_closure(), c);
        prop_assert!(c.classify().preorder);
    }

    #[test]
    fn closure_is_monotone((a, b) in arb_relation_pair()) {
        let union = Relation::from_bits(a.n(), a.bits() | b.bits()).unwrap();
        prop_assert!(a.rt_closure().is_subset(&union.rt_closure()));
        prop_assert!(b.rt_closure().is_subset(&union.rt_closure()));
    }

    #[test]
    fn closure_is_least_preorder_above(r in (1usize..=3).prop_flat_map(|n| (0u64..(1 << (n * n))).prop_map(move |b| Relation::from_bits(n, b).unwrap()))) {
        let c = r.rt_closure();
        for p in enumerate_preorders(r.n()).unwrap() {
            if r.is_subset(&p) {
                prop_assert!(c.is_subset(&p));
            }
        }
    }

    #[test]
    fn relabel_preserves_classification(
        (r, s) in arb_relation().prop_flat_map(|r| (Just(r), arb_permutation(r.n())))
    ) {
        let image = r.relabel(&s).unwrap();
        prop_assert_eq!(image.classify(), r.classify());
        prop_assert_eq!(image.len(), r.len());
        prop_assert_eq!(image.relabel(&s.inverse()).unwrap(), r);
    }

    #[test]
    fn encoding_round_trips(a in arb_matrix()) {
        let code = a.encode().unwrap();
        prop_assert_eq!(Matrix::decode(code, a.n(), a.ring()).unwrap(), a);
    }

    #[test]
    fn conjugation_inverts(
        (a, s) in arb_matrix().prop_flat_map(|a| { let n = a.n(); (Just(a), arb_permutation(n)) })
    ) {
        let p = Matrix::permutation(&s, a.ring()).unwrap();
        let pinv = Matrix::permutation(&s.inverse(), a.ring()).unwrap();
        prop_assert_eq!(a.conjugate_by(&pinv).unwrap().conjugate_by(&p).unwrap(), a.clone());
        prop_assert_eq!(a.conjugate_by(&p).unwrap(), p.mul(&a).unwrap().mul(&pinv).unwrap());
    }
}

#[test]
fn encoding_is_a_bijection_onto_its_range() {
    for (n, m) in [(1, 5), (2, 2), (2, 3), (3, 2)] {
        let ctx = z(m);
        let total = (m as u64).pow((n * n) as u32);
        let mut seen = std::collections::BTreeSet::new();
        for a in all_matrices(n, ctx) {
            let c = a.encode().unwrap();
            assert!(c < total);
            assert!(seen.insert(c));
        }
        assert_eq!(seen.len() as u64, total);
    }
}

#[test]
fn preorder_lattice_laws() {
    for n in 1..=3 {
        let all = enumerate_preorders(n).unwrap();
        for a in &all {
            for b in &all {
                let meet = a.preorder_meet(b).unwrap();
                let join = a.preorder_join(b).unwrap();
                assert!(meet.is_preorder() && join.is_preorder());
                assert!(meet.is_subset(a) && meet.is_subset(b));
                assert!(a.is_subset(&join) && b.is_subset(&join));
                assert_eq!(a.preorder_meet(&join).unwrap(), *a);
                assert_eq!(a.preorder_join(&meet).unwrap(), *a);
                // join is least among pre-order upper bounds
                for c in &all {
                    if a.is_subset(c) && b.is_subset(c) {
                        assert!(join.is_subset(c));
                    }
                }
            }
        }
    }
}

#[test]
fn relabel_is_a_lattice_automorphism() {
    for n in 1..=3 {
        let all = enumerate_preorders(n).unwrap();
        for s in Permutation::all(n).unwrap() {
            for a in &all {
                for b in &all {
                    let (ra, rb) = (a.relabel(&s).unwrap(), b.relabel(&s).unwrap());
                    assert_eq!(a.preorder_meet(b).unwrap().relabel(&s).unwrap(), ra.preorder_meet(&rb).unwrap());
                    assert_eq!(a.preorder_join(b).unwrap().relabel(&s).unwrap(), ra.preorder_join(&rb).unwrap());
                }
            }
        }
    }
}

#[test]
fn orders_are_intersections_of_their_linear_extensions() {
    for n in 1..=3 {
        for r in enumerate_preorders(n).unwrap().into_iter().filter(Relation::is_order) {
            let exts = r.linear_extensions().unwrap();
            assert!(!exts.is_empty());
            let meet = exts.iter().fold(Relation::full(n).unwrap(), |acc, l| {
                assert!(l.is_linear() && r.is_subset(l));
                Relation::from_bits(n, acc.bits() & l.bits()).unwrap()
            });
            assert_eq!(meet, r);
        }
    }
}

#[test]
fn preorder_counts_match_filter() {
    for (n, expected) in [(1, 1), (2, 4), (3, 29), (4, 355)] {
        let filtered = (0..1u64 << (n * n))
            .filter(|&b| {
                let r = Relation::from_bits(n, b).unwrap();
                // reflexive and transitive, spelled out independently of classify
                (0..n).all(|i| r.contains(i, i))
                    && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r.contains(i, j) && r.contains(j, k)) || r.contains(i, k))))
            })
            .count();
        assert_eq!(filtered, expected);
        assert_eq!(enumerate_preorders(n).unwrap().len(), expected);
    }
}
