use std::collections::HashMap;

use super::{canonical_orientation, verify_witness, StructureProperty, Witness};
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet};
use crate::set::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SscOutcome {
    Order(Vec<usize>),
    NotSsc,
    /// More distinct non-trivial votes than the limit.
    Unknown,
}

const NEUTRAL: u8 = 0;
const A: u8 = 1;
const B: u8 = 2;

// Per-pair progress: nothing yet, only A, only B, A then B, B then A.
const START: u8 = 0;
const SEEN_A: u8 = 1;
const SEEN_B: u8 = 2;
const A_THEN_B: u8 = 3;
const B_THEN_A: u8 = 4;

fn step(state: u8, t: u8) -> Option<u8> {
    match (state, t) {
        (s, NEUTRAL) => Some(s),
        (START | SEEN_A, A) => Some(SEEN_A),
        (START | SEEN_B, B) => Some(SEEN_B),
        (SEEN_A | A_THEN_B, B) => Some(A_THEN_B),
        (SEEN_B | B_THEN_A, A) => Some(B_THEN_A),
        _ => None,
    }
}

struct Search {
    types: Vec<Vec<u8>>,
    used: Vec<bool>,
    order: Vec<usize>,
}

impl Search {
    fn run(&mut self, state: &[u8]) -> bool {
        if self.order.len() == self.types.len() {
            return true;
        }
        for x in 0..self.types.len() {
            if self.used[x] {
                continue;
            }
            let next: Option<Vec<u8>> = state
                .iter()
                .zip(&self.types[x])
                .map(|(&s, &t)| step(s, t))
                .collect();
            if let Some(next) = next {
                self.used[x] = true;
                self.order.push(x);
                if self.run(&next) {
                    return true;
                }
                self.order.pop();
                self.used[x] = false;
            }
        }
        false
    }
}

/// Searches voter orders for single-crossingness. Identical votes are kept
/// together and trivial votes are placed last, so only orders of the
/// distinct non-trivial votes are enumerated; above `limit` of those the
/// answer is [`SscOutcome::Unknown`].
pub fn detect_ssc_exhaustive(p: &ApprovalProfile, limit: usize) -> SscOutcome {
    let mut class_of: HashMap<&CandidateSet, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<&CandidateSet> = Vec::new();
    let mut trivial = Vec::new();
    for (i, v) in p.votes().iter().enumerate() {
        if p.is_trivial_vote(i) {
            trivial.push(i);
            continue;
        }
        let id = *class_of.entry(v).or_insert_with(|| {
            reps.push(v);
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(i);
    }
    if classes.len() > limit {
        return SscOutcome::Unknown;
    }
    // Candidates approved by the same classes behave identically.
    let mut seen = HashMap::new();
    let mut cand_reps: Vec<IndexSet> = Vec::new();
    for c in 0..p.m() {
        let s = IndexSet::from_indices(
            classes.len(),
            (0..classes.len()).filter(|&x| reps[x].contains(c)),
        );
        if seen.insert(s.clone(), ()).is_none() {
            cand_reps.push(s);
        }
    }
    let mut pairs = Vec::new();
    for i in 0..cand_reps.len() {
        for j in i + 1..cand_reps.len() {
            pairs.push((i, j));
        }
    }
    let types = (0..classes.len())
        .map(|x| {
            pairs
                .iter()
                .map(
                    |&(a, b)| match (cand_reps[a].contains(x), cand_reps[b].contains(x)) {
                        (true, false) => A,
                        (false, true) => B,
                        _ => NEUTRAL,
                    },
                )
                .collect()
        })
        .collect();
    let mut search = Search {
        types,
        used: vec![false; classes.len()],
        order: Vec::new(),
    };
    if !search.run(&vec![START; pairs.len()]) {
        return SscOutcome::NotSsc;
    }
    let mut order: Vec<usize> = search
        .order
        .iter()
        .flat_map(|&x| classes[x].iter().copied())
        .collect();
    order.extend(trivial);
    SscOutcome::Order(canonical_orientation(order))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every order witnessing `prop` (one of VI, VEI, CI, CEI, SSC, WSC), in
/// lexicographic order. Errors when the orders to enumerate are longer than
/// `limit`.
pub fn enumerate_witness_orders(
    p: &ApprovalProfile,
    prop: StructureProperty,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    use StructureProperty as S;
    let (len, voters) = match prop {
        S::Vi | S::Vei | S::Ssc | S::Psc | S::Wsc => (p.n(), true),
        S::Ci | S::Cei | S::Psp | S::Pe | S::De => (p.m(), false),
        other => {
            return Err(Error::Unsupported(format!(
                "order enumeration for {}",
                other.name()
            )))
        }
    };
    if len > limit {
        return Err(Error::OverLimit { size: len, limit });
    }
    let mut perm: Vec<usize> = (0..len).collect();
    let mut out = Vec::new();
    loop {
        let w = if voters {
            Witness::VoterOrder(perm.clone())
        } else {
            Witness::CandidateOrder(perm.clone())
        };
        if verify_witness(p, prop, &w)? {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::is_ssc_order;
    use super::*;

    fn p(m: usize, votes: &[&[usize]]) -> ApprovalProfile {
        let votes: Vec<Vec<usize>> = votes.iter().map(|v| v.to_vec()).collect();
        ApprovalProfile::from_index_votes(m, &votes).unwrap()
    }

    #[test]
    fn finds_and_refutes() {
        let q = p(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let SscOutcome::Order(o) = detect_ssc_exhaustive(&q, 9) else {
            panic!()
        };
        assert!(is_ssc_order(&q, &o));
        // Every non-trivial vote over three candidates.
        let q = p(3, &[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]]);
        assert!(enumerate_witness_orders(&q, StructureProperty::Ssc, 8)
            .unwrap()
            .is_empty());
        assert_eq!(detect_ssc_exhaustive(&q, 9), SscOutcome::NotSsc);
        assert_eq!(detect_ssc_exhaustive(&q, 5), SscOutcome::Unknown);
    }

    #[test]
    fn agrees_with_enumeration() {
        let cases: &[&[&[usize]]] = &[
            &[&[0], &[1], &[0]],
            &[&[0], &[1], &[2]],
            &[&[0, 1], &[2], &[], &[1, 2], &[0]],
            &[&[0, 1, 2], &[1], &[0, 3], &[2, 3]],
            &[&[0], &[1], &[2], &[0, 1]],
        ];
        for votes in cases {
            let q = p(4, votes);
            let all = enumerate_witness_orders(&q, StructureProperty::Ssc, 8).unwrap();
            let got = detect_ssc_exhaustive(&q, 9);
            assert_eq!(
                matches!(got, SscOutcome::Order(_)),
                !all.is_empty(),
                "{votes:?}"
            );
        }
    }

    #[test]
    fn enumeration() {
        let q = p(3, &[&[0, 1], &[1, 2]]);
        let all = enumerate_witness_orders(&q, StructureProperty::Ci, 8).unwrap();
        assert_eq!(all, vec![vec![0, 1, 2], vec![2, 1, 0]]);
        assert!(matches!(
            enumerate_witness_orders(&q, StructureProperty::Ci, 2),
            Err(Error::OverLimit { size: 3, limit: 2 })
        ));
    }
}
