//! Text and JSON rendering of library results.

use dichotomous::detection::{
    DetectionResult, EuclideanEmbedding, MiddleKind, Radii, Verdict, Witness,
};
use dichotomous::refine::TotalOrderProfile;
use dichotomous::rules::Solution;
use dichotomous::{ApprovalProfile, CandidateSet, Rational};
use serde_json::{json, Value};

pub fn labels(p: &ApprovalProfile, cs: impl IntoIterator<Item = usize>) -> Vec<String> {
    cs.into_iter().map(|c| p.label(c).to_string()).collect()
}

fn set_labels(p: &ApprovalProfile, s: &CandidateSet) -> Vec<String> {
    labels(p, s.iter())
}

/// Voters are shown as 1-based positions in file order.
fn voters(order: &[usize]) -> Vec<usize> {
    order.iter().map(|i| i + 1).collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn middle_name(m: MiddleKind) -> &'static str {
    match m {
        MiddleKind::Absent => "absent",
        MiddleKind::Intersection => "intersection",
        MiddleKind::Union => "union",
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Unknown => "unknown",
    }
}

pub fn rational_json(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn embedding_json(p: &ApprovalProfile, e: &EuclideanEmbedding) -> Value {
    let candidates: serde_json::Map<String, Value> = e
        .candidate_pos
        .iter()
        .enumerate()
        .map(|(c, x)| (p.label(c).to_string(), Value::String(x.to_string())))
        .collect();
    let voters: Vec<String> = e.voter_pos.iter().map(ToString::to_string).collect();
    let radii = match &e.radii {
        Radii::Uniform(r) => json!({ "uniform": r.to_string() }),
        Radii::PerVoter(rs) => {
            json!({ "per_voter": rs.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
    };
    json!({ "candidates": candidates, "voters": voters, "radii": radii })
}

pub fn witness_json(p: &ApprovalProfile, w: &Witness) -> Value {
    match w {
        Witness::VoterOrder(o) => json!({ "voter_order": voters(o) }),
        Witness::CandidateOrder(o) => json!({ "candidate_order": labels(p, o.iter().copied()) }),
        Witness::Wsc(t) => json!({ "wsc": {
            "u": set_labels(p, &t.u),
            "w": set_labels(p, &t.w),
            "middle": middle_name(t.middle),
            "voter_order": voters(&t.voter_order),
        }}),
        Witness::Embedding(e) => json!({ "embedding": embedding_json(p, e) }),
        Witness::Partition(parts) => {
            json!({ "partition": parts.iter().map(|s| set_labels(p, s)).collect::<Vec<_>>() })
        }
        Witness::None => Value::Null,
    }
}

pub fn detection_json(p: &ApprovalProfile, r: &DetectionResult) -> Value {
    let holds = match r.verdict {
        Verdict::Holds => Value::Bool(true),
        Verdict::Fails => Value::Bool(false),
        Verdict::Unknown => Value::Null,
    };
    json!({
        "property": r.property.name(),
        "holds": holds,
        "witness": witness_json(p, &r.witness),
        "method": r.method,
    })
}

pub fn witness_text(p: &ApprovalProfile, w: &Witness) -> String {
    match w {
        Witness::VoterOrder(o) => join(&voters(o)),
        Witness::CandidateOrder(o) => join(&labels(p, o.iter().copied())),
        Witness::Wsc(t) => format!(
            "u={{{}}} w={{{}}} middle={} voters={}",
            join(&set_labels(p, &t.u)),
            join(&set_labels(p, &t.w)),
            middle_name(t.middle),
            join(&voters(&t.voter_order))
        ),
        Witness::Embedding(e) => embedding_text(p, e).trim_end().replace('\n', "; "),
        Witness::Partition(parts) => parts
            .iter()
            .map(|s| format!("{{{}}}", join(&set_labels(p, s))))
            .collect::<Vec<_>>()
            .join(" "),
        Witness::None => "-".into(),
    }
}

pub fn detection_text(p: &ApprovalProfile, r: &DetectionResult) -> String {
    format!(
        "property: {}\nverdict: {}\nwitness: {}\nmethod: {}\n",
        r.property.name(),
        verdict_name(r.verdict),
        witness_text(p, &r.witness),
        r.method
    )
}

pub fn embedding_text(p: &ApprovalProfile, e: &EuclideanEmbedding) -> String {
    let mut s = String::new();
    for (c, x) in e.candidate_pos.iter().enumerate() {
        s += &format!("candidate {}: {x}\n", p.label(c));
    }
    for (i, x) in e.voter_pos.iter().enumerate() {
        s += &format!("voter {}: {x} radius {}\n", i + 1, e.radius(i));
    }
    s
}

pub fn solution_json(p: &ApprovalProfile, s: &Solution) -> Value {
    json!({
        "committee": s.committee.labels(p),
        "score": rational_json(&s.score.as_rational()),
        "algorithm": s.algorithm.name(),
    })
}

pub fn solution_text(p: &ApprovalProfile, s: &Solution) -> String {
    format!(
        "committee: {}\nscore: {}\nalgorithm: {}\n",
        s.committee.labels(p).join(","),
        s.score,
        s.algorithm
    )
}

pub fn rankings_text(p: &ApprovalProfile, t: &TotalOrderProfile) -> String {
    let mut s = String::new();
    for (i, r) in t.rankings().iter().enumerate() {
        s += &format!(
            "voter {}: {}\n",
            i + 1,
            labels(p, r.iter().copied()).join(" > ")
        );
    }
    s
}
