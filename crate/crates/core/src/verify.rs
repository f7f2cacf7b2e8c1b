//! Exhaustive small-instance verification.
//!
//! Each check enumerates every case at a fixed `(n, m)` and compares two
//! independently computed objects by exact set equality. A failing check
//! stops at its first counterexample, which names the inputs needed to
//! replay the failure through the public operations.
//!
//! Timing is left to the caller; reports come back with `elapsed_ms = 0`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::ideal_matrices::{enumerate_rt_imats, IdealMatrix};
use crate::relations::{enumerate_preorders, Permutation, Relation, MAX_ENUMERATION_N};
use crate::rings::RingCtx;
use crate::structural::{
    enumerate_diagonal_subrings, relabel_set, structural_ring, subring_join, MatrixSpace, SubringSet,
    DEFAULT_MAX_SET_BITS,
};

/// Largest `n` for the lattice and conjugate checks, which visit all pre-orders,
/// pairs of pre-orders, or all `2^(n!) - 1` families of conjugates.
pub const MAX_VERIFY_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    Convexity,
    Census,
    SublatticeWitness,
}

impl Subject {
    pub fn as_str(&self) -> &'static str {
        match self {
            Subject::Prop1 => "prop1",
            Subject::Prop2 => "prop2",
            Subject::Prop3 => "prop3",
            Subject::Prop4 => "prop4",
            Subject::Convexity => "convexity",
            Subject::Census => "census",
            Subject::SublatticeWitness => "sublattice-witness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Verified,
    Failed,
    Infeasible,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::Infeasible => "infeasible",
        }
    }
}

/// Structured evidence attached to a report.
///
/// Failures carry the offending inputs. Two variants are witnesses rather
/// than failures: [`Counterexample::NonStructuralSubring`] on a composite
/// modulus, and [`Counterexample::NotSublattice`].
#[derive(Debug, Clone, PartialEq)]
pub enum Counterexample {
    /// Distinct pre-orders with equal structural rings.
    NotInjective { a: Relation, b: Relation },
    /// `M(a ∧ b) != M(a) ∩ M(b)`.
    MeetNotPreserved { a: Relation, b: Relation },
    /// `M(a ∨ b)` differs from the subring generated by `M(a) ∪ M(b)`.
    JoinNotPreserved { a: Relation, b: Relation },
    /// Conjugacy to a triangular ring disagrees with linearity.
    ConjugacyMismatch { theta: Relation, linear: bool, upper_conjugate: bool, lower_conjugate: bool },
    /// The conjugates indexed by the linear extensions of `order` do not
    /// intersect to `M(order)`; `lower` selects the lower-triangular family.
    ExtensionIntersection { order: Relation, lower: bool },
    /// Intersecting the upper-triangular conjugates by `permutations` does
    /// not give the structural ring of an order.
    ConjugateIntersection { permutations: Vec<Permutation> },
    /// A structural ring of a non-order pre-order arose as an intersection.
    NonOrderReached { theta: Relation, permutations: Vec<Permutation> },
    /// An order not reproduced by any family of conjugates.
    OrderNotReached { order: Relation },
    /// A diagonal-containing subring not defined by any reflexive-transitive matrix.
    UnmatchedSubring { subring: SubringSet },
    /// A reflexive-transitive matrix whose defined set is not among the
    /// enumerated diagonal-containing subrings.
    UnmatchedImat { imat: IdealMatrix },
    /// `extract(defined_subring(u)) != u`.
    ExtractionRoundTrip { imat: IdealMatrix },
    /// `defined_subring(extract(s)) != s`.
    DefinitionRoundTrip { subring: SubringSet },
    /// `u <= v` disagrees with containment of the defined subrings.
    OrderMismatch { u: IdealMatrix, v: IdealMatrix },
    /// A diagonal-containing subring that is no structural ring.
    NonStructuralSubring { imat: IdealMatrix, subring: SubringSet },
    /// Composite modulus where every diagonal-containing subring is structural.
    HullEqualsRange { structural: u64, hull: u64 },
    /// Enumerated pre-orders disagree with the exhaustive filter.
    CensusMismatch { enumerated: u64, filtered: u64 },
    /// Two reflexive-transitive matrices whose entrywise sum is not.
    NotSublattice { u: IdealMatrix, v: IdealMatrix, sum: IdealMatrix },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub subject: Subject,
    pub n: usize,
    pub m: Option<u32>,
    pub status: Status,
    pub cases_checked: u64,
    pub counterexample: Option<Counterexample>,
    /// Named counts describing what was compared.
    pub summary: Vec<(&'static str, u64)>,
    /// Why a check was infeasible.
    pub detail: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    fn new(subject: Subject, n: usize, m: Option<u32>) -> Self {
        Report {
            subject,
            n,
            m,
            status: Status::Verified,
            cases_checked: 0,
            counterexample: None,
            summary: Vec::new(),
            detail: None,
            elapsed_ms: 0,
        }
    }

    fn fail(mut self, cx: Counterexample) -> Self {
        self.status = Status::Failed;
        self.counterexample = Some(cx);
        self
    }

    fn infeasible(mut self, why: impl ToString) -> Self {
        self.status = Status::Infeasible;
        self.detail = Some(why.to_string());
        self
    }

    pub fn summary_value(&self, key: &str) -> Option<u64> {
        self.summary.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }
}

/// Verification driver with a configurable explicit-set cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verifier {
    pub max_set_bits: u32,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier { max_set_bits: DEFAULT_MAX_SET_BITS }
    }
}

/// Runs `body`, turning library errors into an infeasible report.
fn guarded(report: Report, body: impl FnOnce(&mut Report) -> Result<Option<Counterexample>, Error>) -> Report {
    let mut report = report;
    match body(&mut report) {
        Ok(None) => report,
        Ok(Some(cx)) => report.fail(cx),
        Err(e) => report.infeasible(e),
    }
}

impl Verifier {
    fn space(&self, n: usize, ctx: RingCtx) -> Result<MatrixSpace, Error> {
        if n > MAX_VERIFY_N {
            return Err(Error::ResourceCap(alloc::format!("verification limited to n <= {MAX_VERIFY_N}")));
        }
        MatrixSpace::with_max_set_bits(n, ctx, self.max_set_bits)
    }

    /// The pre-order lattice embeds into the subring lattice: injective,
    /// meets go to intersections, joins go to generated subrings.
    pub fn prop1(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::Prop1, n, Some(ctx.modulus())), |report| {
            let space = self.space(n, ctx)?;
            let preorders = enumerate_preorders(n)?;
            let rings = preorders.iter().map(|p| structural_ring(p, &space)).collect::<Result<Vec<_>, _>>()?;
            report.summary.push(("preorders", preorders.len() as u64));
            for (x, (a, ra)) in preorders.iter().zip(&rings).enumerate() {
                for (y, (b, rb)) in preorders.iter().zip(&rings).enumerate() {
                    report.cases_checked += 1;
                    if x != y && ra == rb {
                        return Ok(Some(Counterexample::NotInjective { a: *a, b: *b }));
                    }
                    if structural_ring(&a.preorder_meet(b)?, &space)? != ra.intersection(rb)? {
                        return Ok(Some(Counterexample::MeetNotPreserved { a: *a, b: *b }));
                    }
                    if structural_ring(&a.preorder_join(b)?, &space)? != subring_join(ra, rb)? {
                        return Ok(Some(Counterexample::JoinNotPreserved { a: *a, b: *b }));
                    }
                }
            }
            Ok(None)
        })
    }

    /// A structural ring is conjugate to the upper (equivalently lower)
    /// triangular ring exactly when its pre-order is linear.
    pub fn prop2(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::Prop2, n, Some(ctx.modulus())), |report| {
            let space = self.space(n, ctx)?;
            let perms = Permutation::all(n)?;
            let upper = structural_ring(&Relation::natural_order(n)?, &space)?;
            let lower = structural_ring(&reverse_natural_order(n)?, &space)?;
            let upper_conj: Vec<SubringSet> = perms.iter().map(|s| relabel_set(&space, s, &upper)).collect();
            let lower_conj: Vec<SubringSet> = perms.iter().map(|s| relabel_set(&space, s, &lower)).collect();
            let preorders = enumerate_preorders(n)?;
            let mut linear = 0;
            let mut matched = 0;
            for theta in &preorders {
                report.cases_checked += 1;
                let ring = structural_ring(theta, &space)?;
                let is_linear = theta.is_linear();
                let up = upper_conj.contains(&ring);
                let low = lower_conj.contains(&ring);
                linear += is_linear as u64;
                matched += up as u64;
                if up != is_linear || low != is_linear {
                    return Ok(Some(Counterexample::ConjugacyMismatch {
                        theta: *theta,
                        linear: is_linear,
                        upper_conjugate: up,
                        lower_conjugate: low,
                    }));
                }
            }
            report.summary.extend([
                ("preorders", preorders.len() as u64),
                ("linear", linear),
                ("conjugates_matched", matched),
            ]);
            Ok(None)
        })
    }

    /// Structural rings of orders are exactly the intersections of
    /// nonempty families of conjugates of the upper-triangular ring.
    pub fn prop3(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::Prop3, n, Some(ctx.modulus())), |report| {
            let space = self.space(n, ctx)?;
            let perms = Permutation::all(n)?;
            let natural = Relation::natural_order(n)?;
            let reverse = reverse_natural_order(n)?;
            let upper = structural_ring(&natural, &space)?;
            let lower = structural_ring(&reverse, &space)?;

            // linear order -> conjugating permutation, for each triangular family
            let mut via_upper = BTreeMap::new();
            let mut via_lower = BTreeMap::new();
            for s in &perms {
                via_upper.insert(natural.relabel(s)?, s.clone());
                via_lower.insert(reverse.relabel(s)?, s.clone());
            }

            let preorders = enumerate_preorders(n)?;
            let mut rings = BTreeMap::new();
            for p in &preorders {
                rings.insert(*p, structural_ring(p, &space)?);
            }

            // forward: every order is the intersection over its linear extensions
            let orders: Vec<Relation> = preorders.iter().copied().filter(Relation::is_order).collect();
            for order in &orders {
                let exts = order.linear_extensions()?;
                for (lower_family, base, table) in [(false, &upper, &via_upper), (true, &lower, &via_lower)] {
                    report.cases_checked += 1;
                    let mut acc = SubringSet::full(&space);
                    for l in &exts {
                        acc = acc.intersection(&relabel_set(&space, &table[l], base))?;
                    }
                    if acc != rings[order] {
                        return Ok(Some(Counterexample::ExtensionIntersection { order: *order, lower: lower_family }));
                    }
                }
            }

            // backward: every nonempty family intersects to the ring of an order
            let conjugates: Vec<SubringSet> = perms.iter().map(|s| relabel_set(&space, s, &upper)).collect();
            let linears: Vec<Relation> = perms.iter().map(|s| natural.relabel(s)).collect::<Result<_, _>>()?;
            let mut reached = alloc::collections::BTreeSet::new();
            for mask in 1u64..(1u64 << perms.len()) {
                report.cases_checked += 1;
                let chosen: Vec<usize> = (0..perms.len()).filter(|k| mask >> k & 1 == 1).collect();
                let family = || chosen.iter().map(|&k| perms[k].clone()).collect::<Vec<_>>();
                let mut acc = SubringSet::full(&space);
                let mut meet = Relation::full(n)?;
                for &k in &chosen {
                    acc = acc.intersection(&conjugates[k])?;
                    meet = meet.preorder_meet(&linears[k])?;
                }
                if let Some((theta, _)) = rings.iter().find(|(p, r)| !p.is_order() && **r == acc) {
                    return Ok(Some(Counterexample::NonOrderReached { theta: *theta, permutations: family() }));
                }
                if !meet.is_order() || rings[&meet] != acc {
                    return Ok(Some(Counterexample::ConjugateIntersection { permutations: family() }));
                }
                reached.insert(meet);
            }
            if let Some(order) = orders.iter().find(|o| !reached.contains(*o)) {
                return Ok(Some(Counterexample::OrderNotReached { order: *order }));
            }
            report.summary.extend([
                ("preorders", preorders.len() as u64),
                ("orders", orders.len() as u64),
                ("families", (1u64 << perms.len()) - 1),
                ("orders_reached", reached.len() as u64),
                ("non_orders_reached", 0),
            ]);
            Ok(None)
        })
    }

    /// Reflexive-transitive ideal matrices and diagonal-containing subrings
    /// correspond bijectively and order-isomorphically.
    pub fn prop4(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::Prop4, n, Some(ctx.modulus())), |report| {
            let space = self.space(n, ctx)?;
            let hull = enumerate_diagonal_subrings(&space)?;
            let imats = enumerate_rt_imats(n, ctx)?;
            let defined: Vec<SubringSet> =
                imats.iter().map(|u| u.defined_subring(&space)).collect::<Result<_, _>>()?;
            report.summary.extend([("rt_imats", imats.len() as u64), ("diagonal_subrings", hull.len() as u64)]);

            for (u, g) in imats.iter().zip(&defined) {
                report.cases_checked += 1;
                if hull.binary_search(g).is_err() {
                    return Ok(Some(Counterexample::UnmatchedImat { imat: u.clone() }));
                }
                if IdealMatrix::extract(g)? != *u {
                    return Ok(Some(Counterexample::ExtractionRoundTrip { imat: u.clone() }));
                }
            }
            for s in &hull {
                report.cases_checked += 1;
                if !defined.contains(s) {
                    return Ok(Some(Counterexample::UnmatchedSubring { subring: s.clone() }));
                }
                let u = IdealMatrix::extract(s)?;
                if u.defined_subring(&space)? != *s {
                    return Ok(Some(Counterexample::DefinitionRoundTrip { subring: s.clone() }));
                }
            }
            for (u, gu) in imats.iter().zip(&defined) {
                for (v, gv) in imats.iter().zip(&defined) {
                    report.cases_checked += 1;
                    if u.leq(v)? != gu.is_subset(gv)? {
                        return Ok(Some(Counterexample::OrderMismatch { u: u.clone(), v: v.clone() }));
                    }
                }
            }
            Ok(None)
        })
    }

    /// Compares the diagonal-containing subrings with the structural rings.
    /// Prime moduli must give equality; composite moduli must give a strict
    /// superset, reported with its smallest non-structural member.
    pub fn convexity(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::Convexity, n, Some(ctx.modulus())), |report| {
            if n < 2 {
                return Err(Error::InvalidInput("order-convexity probe needs n >= 2".into()));
            }
            let space = self.space(n, ctx)?;
            let hull = enumerate_diagonal_subrings(&space)?;
            let mut structural: Vec<SubringSet> = enumerate_preorders(n)?
                .iter()
                .map(|p| structural_ring(p, &space))
                .collect::<Result<_, _>>()?;
            structural.sort();
            report.cases_checked = hull.len() as u64;
            report.summary.extend([("structural", structural.len() as u64), ("hull", hull.len() as u64)]);

            if let Some(s) = structural.iter().find(|s| hull.binary_search(s).is_err()) {
                // a structural ring missing from the hull breaks the enumeration itself
                return Ok(Some(Counterexample::UnmatchedSubring { subring: s.clone() }));
            }
            let witness = hull
                .iter()
                .filter(|d| structural.binary_search(d).is_err())
                .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            let witness = match witness {
                Some(d) => Some(Counterexample::NonStructuralSubring { imat: IdealMatrix::extract(d)?, subring: d.clone() }),
                None => None,
            };
            match (ctx.is_prime(), witness) {
                (true, None) => Ok(None),
                (true, Some(w)) => Ok(Some(w)),
                (false, None) => Ok(Some(Counterexample::HullEqualsRange {
                    structural: structural.len() as u64,
                    hull: hull.len() as u64,
                })),
                (false, Some(w)) => {
                    report.counterexample = Some(w);
                    Ok(None)
                }
            }
        })
    }

    /// Searches, in enumeration order, for two reflexive-transitive ideal
    /// matrices whose entrywise sum is not reflexive-transitive. Finding
    /// none is also a verified outcome.
    pub fn sublattice_witness(&self, n: usize, ctx: RingCtx) -> Report {
        guarded(Report::new(Subject::SublatticeWitness, n, Some(ctx.modulus())), |report| {
            let imats = enumerate_rt_imats(n, ctx)?;
            report.summary.push(("rt_imats", imats.len() as u64));
            for u in &imats {
                for v in &imats {
                    report.cases_checked += 1;
                    let sum = u.sum(v)?;
                    if !sum.is_reflexive_transitive() {
                        report.summary.push(("witness_found", 1));
                        report.counterexample =
                            Some(Counterexample::NotSublattice { u: u.clone(), v: v.clone(), sum });
                        return Ok(None);
                    }
                }
            }
            report.summary.push(("witness_found", 0));
            Ok(None)
        })
    }
}

/// Pre-order, order and linear-order counts by filtering all `2^(n^2)`
/// relations, cross-checked against [`enumerate_preorders`].
pub fn census(n: usize) -> Report {
    guarded(Report::new(Subject::Census, n, None), |report| {
        if n == 0 || n > MAX_ENUMERATION_N {
            return Err(Error::ResourceCap(alloc::format!("census limited to 1 <= n <= {MAX_ENUMERATION_N}")));
        }
        let (mut pre, mut ord, mut lin) = (0u64, 0u64, 0u64);
        for bits in 0..1u64 << (n * n) {
            let c = Relation::from_bits(n, bits)?.classify();
            pre += c.preorder as u64;
            ord += c.order as u64;
            lin += c.linear as u64;
            report.cases_checked += 1;
        }
        report.summary.extend([("preorders", pre), ("orders", ord), ("linear", lin)]);
        let enumerated = enumerate_preorders(n)?.len() as u64;
        if enumerated != pre {
            return Ok(Some(Counterexample::CensusMismatch { enumerated, filtered: pre }));
        }
        Ok(None)
    })
}

pub fn verify_prop1(n: usize, ctx: RingCtx) -> Report {
    Verifier::default().prop1(n, ctx)
}

pub fn verify_prop2(n: usize, ctx: RingCtx) -> Report {
    Verifier::default().prop2(n, ctx)
}

pub fn verify_prop3(n: usize, ctx: RingCtx) -> Report {
    Verifier::default().prop3(n, ctx)
}

pub fn verify_prop4(n: usize, ctx: RingCtx) -> Report {
    Verifier::default().prop4(n, ctx)
}

pub fn verify_convexity(n: usize, ctx: RingCtx) -> Report {
    Verifier::default().convexity(n, ctx)
}

/// `j <= i`, whose structural ring is the lower-triangular matrices.
pub fn reverse_natural_order(n: usize) -> Result<Relation, Error> {
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=i).map(move |j| (i, j))).collect();
    Relation::from_pairs(n, &pairs)
}
