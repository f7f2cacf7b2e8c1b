mod common;

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use smr_core::relations::enumerate_preorders;
use smr_core::structural::{
    enumerate_diagonal_subrings, enumerate_diagonal_subrings_via, generated_subring, matrix_set_of_relation,
    structural_ring, QuotientRoute,
};
use smr_core::{Matrix, MatrixSpace, Relation, SubringSet};

use common::*;

fn codes(s: &SubringSet) -> BTreeSet<u64> {
    s.codes().collect()
}

#[test]
fn is_subring_agrees_with_pairwise_check_on_relation_sets() {
    for m in [2, 3, 4] {
        let ctx = z(m);
        let space = MatrixSpace::new(2, ctx).unwrap();
        for bits in 0..16 {
            let r = Relation::from_bits(2, bits).unwrap();
            let s = matrix_set_of_relation(&r, &space).unwrap();
            assert_eq!(s.is_subring(), naive_is_subring(&codes(&s), 2, ctx), "{r:?} mod {m}");
        }
    }
    let ctx = z(2);
    let space = MatrixSpace::new(3, ctx).unwrap();
    for bits in (0..512).step_by(5) {
        let r = Relation::from_bits(3, bits).unwrap();
        let s = matrix_set_of_relation(&r, &space).unwrap();
        assert_eq!(s.is_subring(), naive_is_subring(&codes(&s), 3, ctx), "{r:?}");
    }
}

#[test]
fn is_subring_agrees_with_pairwise_check_on_random_sets() {
    let mut rng = StdRng::seed_from_u64(7);
    for m in [2, 3] {
        let ctx = z(m);
        let space = MatrixSpace::new(2, ctx).unwrap();
        for _ in 0..300 {
            // random generators, closed up, then perturbed by one element
            let gens: Vec<Matrix> =
                (0..rng.gen_range(0..3)).map(|_| Matrix::decode(rng.gen_range(0..space.universe()), 2, ctx).unwrap()).collect();
            let mut set = naive_generated(&gens, 2, ctx);
            assert!(naive_is_subring(&set, 2, ctx));
            if rng.gen_bool(0.5) {
                let extra = rng.gen_range(0..space.universe());
                if !set.insert(extra) {
                    set.remove(&extra);
                }
            }
            let ours = SubringSet::from_codes(&space, set.iter().copied()).unwrap();
            assert_eq!(ours.is_subring(), naive_is_subring(&set, 2, ctx));
        }
    }
}

#[test]
fn generated_subring_matches_work_queue_closure() {
    let mut rng = StdRng::seed_from_u64(11);
    for (n, m, rounds) in [(2, 2, 60), (2, 3, 40), (2, 4, 40), (3, 2, 15)] {
        let ctx = z(m);
        let space = MatrixSpace::new(n, ctx).unwrap();
        for _ in 0..rounds {
            let k = rng.gen_range(0..4);
            let gens: Vec<Matrix> =
                (0..k).map(|_| Matrix::decode(rng.gen_range(0..space.universe()), n, ctx).unwrap()).collect();
            let ours = generated_subring(&gens, &space).unwrap();
            assert_eq!(codes(&ours), naive_generated(&gens, n, ctx), "n={n} m={m} gens={gens:?}");
        }
    }
}

#[test]
fn generated_subring_examples_match_oracle() {
    let ctx = z(2);
    let space = MatrixSpace::new(2, ctx).unwrap();
    assert_eq!(codes(&generated_subring(&[], &space).unwrap()), naive_generated(&[], 2, ctx));
    let mut gens: Vec<Matrix> = structural_ring(&Relation::equality(2).unwrap(), &space).unwrap().matrices().collect();
    gens.push(Matrix::unit(2, ctx, 0, 1, 1).unwrap());
    let oracle = naive_generated(&gens, 2, ctx);
    assert_eq!(oracle.len(), 8);
    assert_eq!(codes(&generated_subring(&gens, &space).unwrap()), oracle);
}

#[test]
fn diagonal_subrings_m2_by_subset_filter() {
    let space = MatrixSpace::new(2, z(2)).unwrap();
    let found = full_subset_oracle_m2();
    let ours: BTreeSet<Vec<u64>> =
        enumerate_diagonal_subrings(&space).unwrap().iter().map(|s| s.codes().collect()).collect();
    assert_eq!(found.len(), 4);
    assert_eq!(ours, found);
}

#[test]
fn diagonal_subrings_by_quotient_subset_filter() {
    for (m, count) in [(2, 4), (3, 4), (4, 9)] {
        let space = MatrixSpace::new(2, z(m)).unwrap();
        let oracle = quotient_subset_oracle(m);
        let ours: BTreeSet<Vec<u64>> =
            enumerate_diagonal_subrings(&space).unwrap().iter().map(|s| s.codes().collect()).collect();
        assert_eq!(oracle.len(), count, "m = {m}");
        assert_eq!(ours, oracle, "m = {m}");
    }
}

#[test]
fn diagonal_subrings_prime_routes_and_structural_rings_agree() {
    for (n, m) in [(2, 2), (2, 3), (3, 2)] {
        let space = MatrixSpace::new(n, z(m)).unwrap();
        let via_subspaces = enumerate_diagonal_subrings_via(&space, QuotientRoute::Subspaces).unwrap();
        let via_subgroups = enumerate_diagonal_subrings_via(&space, QuotientRoute::Subgroups).unwrap();
        assert_eq!(via_subspaces, via_subgroups);
        let mut structural: Vec<SubringSet> =
            enumerate_preorders(n).unwrap().iter().map(|p| structural_ring(p, &space).unwrap()).collect();
        structural.sort();
        assert_eq!(via_subspaces, structural, "n={n} m={m}");
    }
}

#[test]
fn enumerated_subrings_are_sorted_and_distinct() {
    let space = MatrixSpace::new(2, z(4)).unwrap();
    let all = enumerate_diagonal_subrings(&space).unwrap();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    assert!(all.iter().all(|s| s.is_subring() && s.contains_diagonal()));
}
