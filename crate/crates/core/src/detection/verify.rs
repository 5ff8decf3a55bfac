//! Literal checks of witnesses against the definitions.

use std::collections::HashMap;

use num_traits::Signed;

use super::{EuclideanEmbedding, Radii, StructureProperty, Witness};
use crate::c1p::check_permutation;
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet};
use crate::set::IndexSet;

fn positions(order: &[usize], len: usize) -> Option<Vec<usize>> {
    check_permutation(order, len).ok()?;
    let mut pos = vec![0; len];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    Some(pos)
}

/// `(count, min, max)` of the positions of the members of `set`.
fn span(set: &IndexSet, pos: &[usize]) -> (usize, usize, usize) {
    set.iter().fold((0, usize::MAX, 0), |(c, lo, hi), x| {
        (c + 1, lo.min(pos[x]), hi.max(pos[x]))
    })
}

fn all_intervals(sets: &[IndexSet], pos: &[usize], extremal: bool) -> bool {
    let last = pos.len().saturating_sub(1);
    sets.iter().all(|s| {
        let (c, lo, hi) = span(s, pos);
        c == 0 || (hi - lo + 1 == c && (!extremal || lo == 0 || hi == last))
    })
}

fn approver_sets(p: &ApprovalProfile) -> Vec<IndexSet> {
    let mut sets = vec![IndexSet::empty(p.n()); p.m()];
    for (i, v) in p.votes().iter().enumerate() {
        for c in v.iter() {
            sets[c].insert(i);
        }
    }
    sets
}

/// Candidates with identical approver sets, one representative set each.
fn candidate_classes(p: &ApprovalProfile) -> Vec<IndexSet> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for s in approver_sets(p) {
        if !seen.contains_key(&s) {
            seen.insert(s.clone(), out.len());
            out.push(s);
        }
    }
    out
}

/// Every candidate's approvers are contiguous along `order`.
pub fn is_vi_order(p: &ApprovalProfile, order: &[usize]) -> bool {
    positions(order, p.n()).is_some_and(|pos| all_intervals(&approver_sets(p), &pos, false))
}

/// Every candidate's approvers form a prefix or a suffix of `order`.
pub fn is_vei_order(p: &ApprovalProfile, order: &[usize]) -> bool {
    positions(order, p.n()).is_some_and(|pos| all_intervals(&approver_sets(p), &pos, true))
}

/// Every vote is contiguous along `axis`.
pub fn is_ci_axis(p: &ApprovalProfile, axis: &[usize]) -> bool {
    positions(axis, p.m()).is_some_and(|pos| all_intervals(p.votes(), &pos, false))
}

/// Every vote is a prefix or a suffix of `axis`.
pub fn is_cei_axis(p: &ApprovalProfile, axis: &[usize]) -> bool {
    positions(axis, p.m()).is_some_and(|pos| all_intervals(p.votes(), &pos, true))
}

/// For each pair of candidates, the voters strictly preferring one of them
/// never interleave with the voters strictly preferring the other.
pub fn is_ssc_order(p: &ApprovalProfile, order: &[usize]) -> bool {
    let Some(pos) = positions(order, p.n()) else {
        return false;
    };
    let classes = candidate_classes(p);
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let (ca, lo_a, hi_a) = span(&a.difference(b), &pos);
            let (cb, lo_b, hi_b) = span(&b.difference(a), &pos);
            if ca > 0 && cb > 0 && !(hi_a < lo_b || hi_b < lo_a) {
                return false;
            }
        }
    }
    true
}

/// For each pair `(a, b)`, the voters preferring `a`, those indifferent and
/// those preferring `b` each form an interval, indifferent in the middle.
pub fn is_wsc_order(p: &ApprovalProfile, order: &[usize]) -> bool {
    if positions(order, p.n()).is_none() {
        return false;
    }
    let classes = candidate_classes(p);
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let ranks = order.iter().map(|&v| match (a.contains(v), b.contains(v)) {
                (true, false) => 0u8,
                (false, true) => 2,
                _ => 1,
            });
            let (mut up, mut down, mut prev) = (true, true, None);
            for r in ranks {
                if let Some(q) = prev {
                    up &= q <= r;
                    down &= q >= r;
                }
                prev = Some(r);
            }
            if !(up || down) {
                return false;
            }
        }
    }
    true
}

/// `parts` are the distinct votes and partition the candidates; with `two`,
/// there are exactly two of them.
pub fn is_partition_witness(p: &ApprovalProfile, parts: &[CandidateSet], two: bool) -> bool {
    if parts.iter().any(|s| s.universe() != p.m() || s.is_empty()) || (two && parts.len() != 2) {
        return false;
    }
    let mut covered = CandidateSet::empty(p.m());
    for s in parts {
        if !covered.is_disjoint(s) {
            return false;
        }
        covered = covered.union(s);
    }
    covered.is_full()
        && p.votes().iter().all(|v| parts.contains(v))
        && parts.iter().all(|s| p.votes().contains(s))
}

fn embedding_matches(p: &ApprovalProfile, e: &EuclideanEmbedding) -> bool {
    if e.voter_pos.len() != p.n() || e.candidate_pos.len() != p.m() {
        return false;
    }
    if let Radii::PerVoter(rs) = &e.radii {
        if rs.len() != p.n() {
            return false;
        }
    }
    (0..p.n()).all(|i| {
        let r = e.radius(i);
        !r.is_negative()
            && (0..p.m()).all(|c| {
                let d = (&e.voter_pos[i] - &e.candidate_pos[c]).abs();
                (&d <= r) == p.vote(i).contains(c)
            })
    })
}

/// Each voter approves exactly the candidates within its own radius.
pub fn is_de_embedding(p: &ApprovalProfile, e: &EuclideanEmbedding) -> bool {
    embedding_matches(p, e)
}

/// As [`is_de_embedding`], with one radius shared by all voters.
pub fn is_due_embedding(p: &ApprovalProfile, e: &EuclideanEmbedding) -> bool {
    let uniform = match &e.radii {
        Radii::Uniform(_) => true,
        Radii::PerVoter(rs) => rs.windows(2).all(|w| w[0] == w[1]),
    };
    uniform && embedding_matches(p, e)
}

fn perm(order: &[usize], len: usize) -> Result<()> {
    check_permutation(order, len)
}

/// Checks `w` against the literal definition of `prop`.
///
/// Errors when the witness has the wrong shape for the property or is not a
/// permutation of the right length.
pub fn verify_witness(p: &ApprovalProfile, prop: StructureProperty, w: &Witness) -> Result<bool> {
    use StructureProperty as S;
    match (prop, w) {
        (S::TwoPart, Witness::Partition(parts)) => Ok(is_partition_witness(p, parts, true)),
        (S::Part, Witness::Partition(parts)) => Ok(is_partition_witness(p, parts, false)),
        (S::Vi, Witness::VoterOrder(o)) => perm(o, p.n()).map(|_| is_vi_order(p, o)),
        (S::Vei, Witness::VoterOrder(o)) => perm(o, p.n()).map(|_| is_vei_order(p, o)),
        (S::Ssc | S::Psc, Witness::VoterOrder(o)) => perm(o, p.n()).map(|_| is_ssc_order(p, o)),
        (S::Wsc, Witness::VoterOrder(o)) => perm(o, p.n()).map(|_| is_wsc_order(p, o)),
        (S::Wsc, Witness::Wsc(t)) => {
            perm(&t.voter_order, p.n()).map(|_| is_wsc_order(p, &t.voter_order))
        }
        (S::Ci | S::Psp | S::Pe | S::De, Witness::CandidateOrder(o)) => {
            perm(o, p.m()).map(|_| is_ci_axis(p, o))
        }
        (S::Cei, Witness::CandidateOrder(o)) => perm(o, p.m()).map(|_| is_cei_axis(p, o)),
        (S::Ci | S::Pe | S::De, Witness::Embedding(e)) => Ok(is_de_embedding(p, e)),
        (S::Due, Witness::Embedding(e)) => Ok(is_due_embedding(p, e)),
        _ => Err(Error::WitnessShape(prop.name().to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::rational;

    fn p(m: usize, votes: &[&[usize]]) -> ApprovalProfile {
        let votes: Vec<Vec<usize>> = votes.iter().map(|v| v.to_vec()).collect();
        ApprovalProfile::from_index_votes(m, &votes).unwrap()
    }

    #[test]
    fn interval_orders() {
        let q = p(3, &[&[0, 1], &[1, 2], &[2]]);
        assert!(is_ci_axis(&q, &[0, 1, 2]));
        assert!(!is_ci_axis(&q, &[1, 0, 2]));
        assert!(is_cei_axis(&q, &[0, 1, 2]));
        assert!(is_vi_order(&q, &[0, 1, 2]));
        assert!(!is_vi_order(&q, &[1, 0, 2]));
        assert!(!is_ci_axis(&q, &[0, 1]));
    }

    #[test]
    fn wsc_literal_check() {
        let q = p(3, &[&[0, 1], &[1], &[1, 2]]);
        assert!(is_wsc_order(&q, &[0, 1, 2]));
        assert!(!is_wsc_order(&q, &[1, 0, 2]));
        let single = p(3, &[&[0], &[1], &[2]]);
        assert!((0..3).all(|s| !is_wsc_order(&single, &[s, (s + 1) % 3, (s + 2) % 3])));
    }

    #[test]
    fn ssc_literal_check() {
        let q = p(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        assert!(is_ssc_order(&q, &[0, 1, 2]));
        let r = p(4, &[&[0], &[1], &[0], &[1]]);
        assert!(!is_ssc_order(&r, &[0, 1, 2, 3]));
        assert!(is_ssc_order(&r, &[0, 2, 1, 3]));
    }

    #[test]
    fn embedding_checks() {
        let q = p(2, &[&[0], &[0, 1]]);
        let e = EuclideanEmbedding {
            voter_pos: vec![rational(0, 1), rational(1, 1)],
            candidate_pos: vec![rational(0, 1), rational(2, 1)],
            radii: Radii::Uniform(rational(1, 1)),
        };
        assert!(is_due_embedding(&q, &e));
        let e2 = EuclideanEmbedding {
            radii: Radii::PerVoter(vec![rational(1, 2), rational(1, 1)]),
            ..e
        };
        assert!(is_de_embedding(&q, &e2));
        assert!(!is_due_embedding(&q, &e2));
    }

    #[test]
    fn shape_errors() {
        let q = p(2, &[&[0]]);
        assert!(matches!(
            verify_witness(
                &q,
                StructureProperty::Vi,
                &Witness::CandidateOrder(vec![0, 1])
            ),
            Err(Error::WitnessShape(_))
        ));
        assert!(matches!(
            verify_witness(
                &q,
                StructureProperty::Ci,
                &Witness::CandidateOrder(vec![0, 0])
            ),
            Err(Error::MalformedPermutation { .. })
        ));
        assert!(verify_witness(&q, StructureProperty::Ci, &Witness::None).is_err());
    }
}
