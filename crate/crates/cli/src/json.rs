//! JSON encodings. Field names and layout are a compatibility surface.

use serde_json::{json, Value};
use smr_core::{Counterexample, Ideal, IdealMatrix, Matrix, Permutation, Relation, Report, SubringSet};

/// Above this many members a set is summarised by its digest.
pub const MAX_LISTED_MEMBERS: u64 = 4096;

pub fn relation(r: &Relation) -> Value {
    let pairs: Vec<[usize; 2]> = r.pairs().into_iter().map(|(i, j)| [i, j]).collect();
    json!({ "n": r.n(), "pairs": pairs })
}

pub fn ideal(i: &Ideal) -> Value {
    json!(i.generator())
}

pub fn matrix(a: &Matrix) -> Value {
    json!(a.rows().map(<[u32]>::to_vec).collect::<Vec<_>>())
}

pub fn imat(u: &IdealMatrix) -> Value {
    let rows: Vec<Vec<u32>> = u.generators().chunks(u.n()).map(<[u32]>::to_vec).collect();
    json!({ "m": u.ring().modulus(), "rows": rows })
}

/// Sorted member encodings, or the FNV-1a digest of that stream when large.
pub fn subring(s: &SubringSet) -> Value {
    let mut v = json!({ "n": s.n(), "m": s.ring().modulus(), "size": s.len() });
    if s.len() <= MAX_LISTED_MEMBERS {
        v["members"] = json!(s.codes().collect::<Vec<_>>());
    } else {
        v["digest"] = json!(s.digest());
    }
    v
}

fn permutations(ps: &[Permutation]) -> Value {
    // 1-based images, matching the relation grammar
    json!(ps.iter().map(|p| p.image().iter().map(|x| x + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn counterexample(cx: &Counterexample) -> Value {
    use Counterexample::*;
    match cx {
        NotInjective { a, b } => json!({ "kind": "not_injective", "a": relation(a), "b": relation(b) }),
        MeetNotPreserved { a, b } => json!({ "kind": "meet_not_preserved", "a": relation(a), "b": relation(b) }),
        JoinNotPreserved { a, b } => json!({ "kind": "join_not_preserved", "a": relation(a), "b": relation(b) }),
        ConjugacyMismatch { theta, linear, upper_conjugate, lower_conjugate } => json!({
            "kind": "conjugacy_mismatch",
            "theta": relation(theta),
            "linear": linear,
            "upper_conjugate": upper_conjugate,
            "lower_conjugate": lower_conjugate,
        }),
        ExtensionIntersection { order, lower } => {
            json!({ "kind": "extension_intersection", "order": relation(order), "lower": lower })
        }
        ConjugateIntersection { permutations: ps } => {
            json!({ "kind": "conjugate_intersection", "permutations": permutations(ps) })
        }
        NonOrderReached { theta, permutations: ps } => {
            json!({ "kind": "non_order_reached", "theta": relation(theta), "permutations": permutations(ps) })
        }
        OrderNotReached { order } => json!({ "kind": "order_not_reached", "order": relation(order) }),
        UnmatchedSubring { subring: s } => json!({ "kind": "unmatched_subring", "subring": subring(s) }),
        UnmatchedImat { imat: u } => json!({ "kind": "unmatched_imat", "imat": imat(u) }),
        ExtractionRoundTrip { imat: u } => json!({ "kind": "extraction_round_trip", "imat": imat(u) }),
        DefinitionRoundTrip { subring: s } => json!({ "kind": "definition_round_trip", "subring": subring(s) }),
        OrderMismatch { u, v } => json!({ "kind": "order_mismatch", "u": imat(u), "v": imat(v) }),
        NonStructuralSubring { imat: u, subring: s } => {
            json!({ "kind": "non_structural_subring", "imat": imat(u), "subring": subring(s) })
        }
        HullEqualsRange { structural, hull } => {
            json!({ "kind": "hull_equals_range", "structural": structural, "hull": hull })
        }
        CensusMismatch { enumerated, filtered } => {
            json!({ "kind": "census_mismatch", "enumerated": enumerated, "filtered": filtered })
        }
        NotSublattice { u, v, sum } => {
            json!({ "kind": "not_sublattice", "u": imat(u), "v": imat(v), "sum": imat(sum) })
        }
    }
}

pub fn report(r: &Report) -> Value {
    let mut v = json!({
        "subject": r.subject.as_str(),
        "n": r.n,
        "m": r.m,
        "status": r.status.as_str(),
        "cases_checked": r.cases_checked,
        "counterexample": r.counterexample.as_ref().map(counterexample),
        "elapsed_ms": r.elapsed_ms,
    });
    if r.m.is_none() {
        v.as_object_mut().expect("object").remove("m");
    }
    let summary: serde_json::Map<String, Value> = r.summary.iter().map(|&(k, x)| (k.to_string(), json!(x))).collect();
    v["summary"] = Value::Object(summary);
    if let Some(d) = &r.detail {
        v["detail"] = json!(d);
    }
    v
}
