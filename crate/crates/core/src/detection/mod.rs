//! Recognition of restricted dichotomous domains.
//!
//! Every positive answer carries a witness that [`verify_witness`] checks
//! against the literal definition of the property.

mod embed;
mod search;
mod verify;
mod wsc;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::c1p::{c1p_column_order, BinaryMatrix};
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet, Rational};

pub use embed::embed_from_witness;
pub use search::{detect_ssc_exhaustive, enumerate_witness_orders, SscOutcome};
pub use verify::{
    is_cei_axis, is_ci_axis, is_de_embedding, is_due_embedding, is_partition_witness, is_ssc_order,
    is_vei_order, is_vi_order, is_wsc_order, verify_witness,
};
pub use wsc::wsc_characterize;

/// The restricted domains, including the aliases that coincide on
/// dichotomous profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureProperty {
    TwoPart,
    Part,
    Vei,
    Vi,
    Cei,
    Ci,
    Wsc,
    Ssc,
    Psc,
    Psp,
    Pe,
    De,
    Due,
}

impl StructureProperty {
    pub const ALL: [StructureProperty; 13] = [
        StructureProperty::TwoPart,
        StructureProperty::Part,
        StructureProperty::Vei,
        StructureProperty::Vi,
        StructureProperty::Cei,
        StructureProperty::Ci,
        StructureProperty::Wsc,
        StructureProperty::Ssc,
        StructureProperty::Psc,
        StructureProperty::Psp,
        StructureProperty::Pe,
        StructureProperty::De,
        StructureProperty::Due,
    ];

    /// PSP, PE and DE coincide with CI; PSC coincides with SSC.
    pub fn canonical(self) -> StructureProperty {
        match self {
            StructureProperty::Psp | StructureProperty::Pe | StructureProperty::De => {
                StructureProperty::Ci
            }
            StructureProperty::Psc => StructureProperty::Ssc,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureProperty::TwoPart => "2PART",
            StructureProperty::Part => "PART",
            StructureProperty::Vei => "VEI",
            StructureProperty::Vi => "VI",
            StructureProperty::Cei => "CEI",
            StructureProperty::Ci => "CI",
            StructureProperty::Wsc => "WSC",
            StructureProperty::Ssc => "SSC",
            StructureProperty::Psc => "PSC",
            StructureProperty::Psp => "PSP",
            StructureProperty::Pe => "PE",
            StructureProperty::De => "DE",
            StructureProperty::Due => "DUE",
        }
    }
}

impl fmt::Display for StructureProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        StructureProperty::ALL
            .into_iter()
            .find(|p| p.name() == up || (up == "TWOPART" && *p == StructureProperty::TwoPart))
            .ok_or_else(|| Error::Unsupported(format!("unknown property `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddleKind {
    Absent,
    Intersection,
    Union,
}

/// The structure behind a WSC profile: extreme votes `u` and `w`, the kind
/// of middle vote, the candidate blocks, and a voter order realizing WSC.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WscTriple {
    pub u: CandidateSet,
    pub w: CandidateSet,
    pub middle: MiddleKind,
    /// `u ∩ w`, `u \ w`, `w \ u`, and the complement of `u ∪ w`.
    pub blocks: [CandidateSet; 4],
    pub voter_order: Vec<usize>,
}

impl WscTriple {
    pub(crate) fn new(
        u: CandidateSet,
        w: CandidateSet,
        middle: MiddleKind,
        voter_order: Vec<usize>,
    ) -> Self {
        let blocks = [
            u.intersection(&w),
            u.difference(&w),
            w.difference(&u),
            u.union(&w).complement(),
        ];
        WscTriple {
            u,
            w,
            middle,
            blocks,
            voter_order,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Radii {
    /// One radius for every voter.
    Uniform(Rational),
    /// One radius per voter.
    PerVoter(Vec<Rational>),
}

/// Positions on the real line for voters and candidates, with approval radii.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanEmbedding {
    pub voter_pos: Vec<Rational>,
    pub candidate_pos: Vec<Rational>,
    pub radii: Radii,
}

impl EuclideanEmbedding {
    pub fn radius(&self, voter: usize) -> &Rational {
        match &self.radii {
            Radii::Uniform(r) => r,
            Radii::PerVoter(rs) => &rs[voter],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    VoterOrder(Vec<usize>),
    CandidateOrder(Vec<usize>),
    Wsc(WscTriple),
    Embedding(EuclideanEmbedding),
    Partition(Vec<CandidateSet>),
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// The exhaustive search was skipped because the instance is too large.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionResult {
    pub property: StructureProperty,
    pub verdict: Verdict,
    pub witness: Witness,
    pub method: String,
}

impl DetectionResult {
    fn new(property: StructureProperty, verdict: Verdict, witness: Witness, method: &str) -> Self {
        DetectionResult {
            property,
            verdict,
            witness,
            method: method.to_string(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetectOptions {
    /// Largest number of distinct non-trivial votes for which the SSC
    /// decider enumerates voter orders.
    pub ssc_limit: usize,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions { ssc_limit: 9 }
    }
}

/// Of an order and its reverse, the lexicographically smaller one.
pub(crate) fn canonical_orientation(order: Vec<usize>) -> Vec<usize> {
    let rev: Vec<usize> = order.iter().rev().copied().collect();
    if rev < order {
        rev
    } else {
        order
    }
}

fn vote_matrix(p: &ApprovalProfile) -> BinaryMatrix {
    BinaryMatrix::from_sets(p.m(), p.votes().to_vec())
}

/// A candidate order under which every vote is an interval.
pub fn ci_axis(p: &ApprovalProfile) -> Option<Vec<usize>> {
    c1p_column_order(&vote_matrix(p)).map(canonical_orientation)
}

/// A candidate order under which every vote is a prefix or a suffix.
pub fn cei_axis(p: &ApprovalProfile) -> Option<Vec<usize>> {
    c1p_column_order(&vote_matrix(p).with_complements()).map(canonical_orientation)
}

/// A voter order under which every candidate's approvers form an interval.
pub fn vi_order(p: &ApprovalProfile) -> Option<Vec<usize>> {
    c1p_column_order(&vote_matrix(p).transpose()).map(canonical_orientation)
}

/// A voter order under which every candidate's approvers form a prefix or a
/// suffix.
pub fn vei_order(p: &ApprovalProfile) -> Option<Vec<usize>> {
    c1p_column_order(&vote_matrix(p).transpose().with_complements()).map(canonical_orientation)
}

fn distinct_votes(p: &ApprovalProfile) -> Vec<CandidateSet> {
    let mut seen = HashSet::new();
    p.votes()
        .iter()
        .filter(|v| seen.insert(*v))
        .cloned()
        .collect()
}

fn sort_parts(mut parts: Vec<CandidateSet>) -> Vec<CandidateSet> {
    parts.sort_by_key(|s| s.to_vec());
    parts
}

/// The parts of a PART profile (distinct votes), if it is one.
pub fn part_witness(p: &ApprovalProfile) -> Option<Vec<CandidateSet>> {
    let parts = distinct_votes(p);
    if parts.iter().any(CandidateSet::is_empty) {
        return None;
    }
    let mut covered = CandidateSet::empty(p.m());
    for part in &parts {
        if !covered.is_disjoint(part) {
            return None;
        }
        covered = covered.union(part);
    }
    covered.is_full().then(|| sort_parts(parts))
}

/// The two votes of a 2PART profile, if it is one.
pub fn two_part_witness(p: &ApprovalProfile) -> Option<Vec<CandidateSet>> {
    let parts = distinct_votes(p);
    if parts.len() != 2 || !parts[0].is_disjoint(&parts[1]) || !parts[0].union(&parts[1]).is_full()
    {
        return None;
    }
    Some(sort_parts(parts))
}

/// Decides `prop` for `p` with default options.
pub fn detect(p: &ApprovalProfile, prop: StructureProperty) -> Result<DetectionResult> {
    detect_with(p, prop, &DetectOptions::default())
}

pub fn detect_with(
    p: &ApprovalProfile,
    prop: StructureProperty,
    opts: &DetectOptions,
) -> Result<DetectionResult> {
    use StructureProperty as S;
    let from_order = |o: Option<Vec<usize>>, voters: bool, method: &str| match o {
        Some(o) if voters => {
            DetectionResult::new(prop, Verdict::Holds, Witness::VoterOrder(o), method)
        }
        Some(o) => DetectionResult::new(prop, Verdict::Holds, Witness::CandidateOrder(o), method),
        None => DetectionResult::new(prop, Verdict::Fails, Witness::None, method),
    };
    let from_parts = |parts: Option<Vec<CandidateSet>>| match parts {
        Some(parts) => DetectionResult::new(
            prop,
            Verdict::Holds,
            Witness::Partition(parts),
            "distinct-votes",
        ),
        None => DetectionResult::new(prop, Verdict::Fails, Witness::None, "distinct-votes"),
    };
    Ok(match prop.canonical() {
        S::TwoPart => from_parts(two_part_witness(p)),
        S::Part => from_parts(part_witness(p)),
        S::Ci => from_order(ci_axis(p), false, "consecutive-ones"),
        S::Cei => from_order(cei_axis(p), false, "consecutive-ones"),
        S::Vi => from_order(vi_order(p), true, "consecutive-ones"),
        S::Vei => from_order(vei_order(p), true, "consecutive-ones"),
        S::Wsc => match wsc_characterize(p) {
            Some(t) => {
                DetectionResult::new(prop, Verdict::Holds, Witness::Wsc(t), "weak-order-classes")
            }
            None => DetectionResult::new(prop, Verdict::Fails, Witness::None, "weak-order-classes"),
        },
        S::Ssc => detect_ssc(p, prop, opts),
        S::Due => return Err(Error::Unsupported("DUE detection".into())),
        _ => unreachable!("aliases are canonicalized"),
    })
}

fn detect_ssc(
    p: &ApprovalProfile,
    prop: StructureProperty,
    opts: &DetectOptions,
) -> DetectionResult {
    // A VI order is always an SSC order.
    if let Some(o) = vi_order(p) {
        if is_ssc_order(p, &o) {
            return DetectionResult::new(prop, Verdict::Holds, Witness::VoterOrder(o), "vi-order");
        }
    }
    // A CI profile is PE; ordering voters along a Euclidean embedding is
    // single-crossing for the refinement, hence for the votes.
    if let Some(axis) = ci_axis(p) {
        if let Ok(e) = embed_from_witness(p, StructureProperty::Ci, &Witness::CandidateOrder(axis))
        {
            let mut order: Vec<usize> = (0..p.n()).collect();
            order.sort_by(|&a, &b| e.voter_pos[a].cmp(&e.voter_pos[b]).then(a.cmp(&b)));
            let order = canonical_orientation(order);
            if is_ssc_order(p, &order) {
                return DetectionResult::new(
                    prop,
                    Verdict::Holds,
                    Witness::VoterOrder(order),
                    "ci-embedding-order",
                );
            }
        }
    }
    match detect_ssc_exhaustive(p, opts.ssc_limit) {
        SscOutcome::Order(o) => {
            DetectionResult::new(prop, Verdict::Holds, Witness::VoterOrder(o), "exhaustive")
        }
        SscOutcome::NotSsc => {
            DetectionResult::new(prop, Verdict::Fails, Witness::None, "exhaustive")
        }
        SscOutcome::Unknown => {
            DetectionResult::new(prop, Verdict::Unknown, Witness::None, "exhaustive-skipped")
        }
    }
}
