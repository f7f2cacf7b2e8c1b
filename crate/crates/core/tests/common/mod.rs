//! Brute-force oracles shared by the integration tests. None of these call
//! into the closure or enumeration code they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use smr_core::{Matrix, RingCtx};

pub fn z(m: u32) -> RingCtx {
    RingCtx::new(m).unwrap()
}

pub fn all_matrices(n: usize, ctx: RingCtx) -> Vec<Matrix> {
    let total = (ctx.modulus() as u64).pow((n * n) as u32);
    (0..total).map(|c| Matrix::decode(c, n, ctx).unwrap()).collect()
}

/// Pairwise check of the subring axioms on an explicit set.
pub fn naive_is_subring(set: &BTreeSet<u64>, n: usize, ctx: RingCtx) -> bool {
    let id = Matrix::identity(n, ctx).unwrap().encode().unwrap();
    if !set.contains(&id) {
        return false;
    }
    let mats: Vec<Matrix> = set.iter().map(|&c| Matrix::decode(c, n, ctx).unwrap()).collect();
    for a in &mats {
        if !set.contains(&a.neg().encode().unwrap()) {
            return false;
        }
        for b in &mats {
            if !set.contains(&a.add(b).unwrap().encode().unwrap())
                || !set.contains(&a.mul(b).unwrap().encode().unwrap())
            {
                return false;
            }
        }
    }
    true
}

/// Work-queue closure: every new element is combined with every current
/// member under `+` and `·` in both orders, and negated on insertion.
pub fn naive_generated(gens: &[Matrix], n: usize, ctx: RingCtx) -> BTreeSet<u64> {
    let mut set = BTreeSet::new();
    let mut queue = VecDeque::new();
    let push = |a: Matrix, set: &mut BTreeSet<u64>, queue: &mut VecDeque<Matrix>| {
        for x in [a.clone(), a.neg()] {
            if set.insert(x.encode().unwrap()) {
                queue.push_back(x);
            }
        }
    };
    push(Matrix::zero(n, ctx).unwrap(), &mut set, &mut queue);
    push(Matrix::identity(n, ctx).unwrap(), &mut set, &mut queue);
    for g in gens {
        push(g.clone(), &mut set, &mut queue);
    }
    while let Some(a) = queue.pop_front() {
        let members: Vec<Matrix> = set.iter().map(|&c| Matrix::decode(c, n, ctx).unwrap()).collect();
        for b in members {
            push(a.add(&b).unwrap(), &mut set, &mut queue);
            push(a.mul(&b).unwrap(), &mut set, &mut queue);
            push(b.mul(&a).unwrap(), &mut set, &mut queue);
        }
    }
    set
}

/// Ideal of `Z_m` as an explicit subset.
pub fn ideal_set(g: u32, m: u32) -> BTreeSet<u32> {
    (0..m).filter(|x| x % g == 0).collect()
}

/// Subsets of the off-diagonal quotient `(Z_m)^2` that are subgroups,
/// lifted and filtered by the pairwise subring check.
pub fn quotient_subset_oracle(m: u32) -> BTreeSet<Vec<u64>> {
    let ctx = z(m);
    let q = (m * m) as usize; // (b, c) with b at (1,2), c at (2,1)
    let add = |x: usize, y: usize| ((x % m as usize + y % m as usize) % m as usize) + ((x / m as usize + y / m as usize) % m as usize) * m as usize;
    let mut found = BTreeSet::new();
    for mask in 0u64..1 << q {
        if mask & 1 == 0 {
            continue;
        }
        let h: Vec<usize> = (0..q).filter(|k| mask >> k & 1 == 1).collect();
        if !h.iter().all(|&x| h.iter().all(|&y| mask >> add(x, y) & 1 == 1)) {
            continue;
        }
        let mut set = BTreeSet::new();
        for a in 0..m {
            for d in 0..m {
                for &x in &h {
                    let (b, c) = ((x % m as usize) as u32, (x / m as usize) as u32);
                    let mat = Matrix::from_rows(ctx, &[&[a, b], &[c, d]]).unwrap();
                    set.insert(mat.encode().unwrap());
                }
            }
        }
        if naive_is_subring(&set, 2, ctx) {
            found.insert(set.into_iter().collect());
        }
    }
    found
}


/// Every subset of `M_2(Z_2)` that contains the four diagonal matrices and
/// passes the pairwise subring check.
pub fn full_subset_oracle_m2() -> BTreeSet<Vec<u64>> {
    let ctx = z(2);
    let diag: BTreeSet<u64> = all_matrices(2, ctx)
        .iter()
        .filter(|a| a.get(0, 1) == 0 && a.get(1, 0) == 0)
        .map(|a| a.encode().unwrap())
        .collect();
    let rest: Vec<u64> = (0..16).filter(|c| !diag.contains(c)).collect();
    let mut found = BTreeSet::new();
    for mask in 0u32..1 << rest.len() {
        let mut set = diag.clone();
        set.extend((0..rest.len()).filter(|k| mask >> k & 1 == 1).map(|k| rest[k]));
        if naive_is_subring(&set, 2, ctx) {
            found.insert(set.into_iter().collect());
        }
    }
    found
}
