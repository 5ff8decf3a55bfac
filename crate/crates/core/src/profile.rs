//! Approval profiles, committees and weight schemes.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::set::IndexSet;

/// Exact rational numbers (canonical reduced form, positive denominator).
pub type Rational = num_rational::BigRational;

/// A set of candidate indices.
pub type CandidateSet = IndexSet;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `n` approval votes over `m` labelled candidates.
///
/// Vote order is significant: witness orders and multiplicities refer to
/// positions in `votes`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApprovalProfile {
    labels: Vec<String>,
    votes: Vec<CandidateSet>,
}

impl ApprovalProfile {
    /// Builds a profile from candidate labels and votes given as label lists.
    pub fn build<S, V, L>(labels: &[S], votes: V) -> Result<Self>
    where
        S: AsRef<str>,
        V: IntoIterator<Item = L>,
        L: IntoIterator,
        L::Item: AsRef<str>,
    {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let m = labels.len();
        let mut sets = Vec::new();
        for (vi, vote) in votes.into_iter().enumerate() {
            let mut s = IndexSet::empty(m);
            for l in vote {
                let l = l.as_ref();
                let &c = index.get(l).ok_or_else(|| Error::UnknownLabel {
                    vote: vi,
                    label: l.to_string(),
                })?;
                s.insert(c);
            }
            sets.push(s);
        }
        Self::from_sets(
            labels.iter().map(|l| l.as_ref().to_string()).collect(),
            sets,
        )
    }

    /// Builds a profile from labels and index sets.
    pub fn from_sets(labels: Vec<String>, votes: Vec<CandidateSet>) -> Result<Self> {
        if labels.is_empty() || votes.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let m = labels.len();
        for v in &votes {
            if v.universe() != m {
                return Err(Error::DimensionMismatch(format!(
                    "vote over {} candidates in a profile of {m}",
                    v.universe()
                )));
            }
        }
        Ok(ApprovalProfile { labels, votes })
    }

    /// Convenience constructor with generated labels `c0, c1, ...`.
    pub fn from_index_votes(m: usize, votes: &[Vec<usize>]) -> Result<Self> {
        let labels = (0..m).map(|i| format!("c{i}")).collect();
        let mut sets = Vec::with_capacity(votes.len());
        for v in votes {
            let mut s = IndexSet::empty(m);
            for &c in v {
                if c >= m {
                    return Err(Error::CandidateOutOfRange { index: c, m });
                }
                s.insert(c);
            }
            sets.push(s);
        }
        Self::from_sets(labels, sets)
    }

    pub fn n(&self) -> usize {
        self.votes.len()
    }

    pub fn m(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, c: usize) -> &str {
        &self.labels[c]
    }

    pub fn votes(&self) -> &[CandidateSet] {
        &self.votes
    }

    pub fn vote(&self, i: usize) -> &CandidateSet {
        &self.votes[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_trivial_vote(&self, i: usize) -> bool {
        let v = &self.votes[i];
        v.is_empty() || v.is_full()
    }

    /// The voters approving candidate `c`, as a set over `0..n`.
    pub fn approvers(&self, c: usize) -> IndexSet {
        IndexSet::from_indices(
            self.n(),
            self.votes
                .iter()
                .enumerate()
                .filter(|(_, v)| v.contains(c))
                .map(|(i, _)| i),
        )
    }

    /// The profile restricted to the listed voters, in the listed order.
    pub fn select_voters(&self, voters: &[usize]) -> Result<Self> {
        Self::from_sets(
            self.labels.clone(),
            voters.iter().map(|&i| self.votes[i].clone()).collect(),
        )
    }

    /// The union of all votes.
    pub fn approved_candidates(&self) -> CandidateSet {
        self.votes
            .iter()
            .fold(IndexSet::empty(self.m()), |acc, v| acc.union(v))
    }
}

/// True iff two votes over `m` candidates induce the same dichotomous weak
/// order. The empty vote and the full vote both induce the empty relation.
pub fn weak_order_equal(u: &CandidateSet, v: &CandidateSet, m: usize) -> bool {
    debug_assert!(u.universe() == m && v.universe() == m);
    u == v || ((u.is_empty() || u.is_full()) && (v.is_empty() || v.is_full()))
}

/// Summary statistics used to pick parameterized algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileStats {
    /// Largest vote size.
    pub max_vote_size: usize,
    /// Largest number of voters approving one candidate.
    pub max_degree: usize,
    pub distinct_votes: usize,
}

pub fn profile_stats(p: &ApprovalProfile) -> ProfileStats {
    let max_vote_size = p.votes().iter().map(IndexSet::len).max().unwrap_or(0);
    let mut degree = vec![0usize; p.m()];
    for v in p.votes() {
        for c in v.iter() {
            degree[c] += 1;
        }
    }
    let distinct: HashSet<&CandidateSet> = p.votes().iter().collect();
    ProfileStats {
        max_vote_size,
        max_degree: degree.into_iter().max().unwrap_or(0),
        distinct_votes: distinct.len(),
    }
}

/// A size-`k` committee: sorted, duplicate-free candidate indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    members: Vec<usize>,
}

impl Committee {
    pub fn new(mut members: Vec<usize>, m: usize) -> Result<Self> {
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMember(w[0]));
            }
        }
        if let Some(&last) = members.last() {
            if last >= m {
                return Err(Error::CandidateOutOfRange { index: last, m });
            }
        }
        Ok(Committee { members })
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Committee { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, c: usize) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    pub fn to_set(&self, m: usize) -> CandidateSet {
        IndexSet::from_indices(m, self.members.iter().copied())
    }

    pub fn labels<'a>(&self, p: &'a ApprovalProfile) -> Vec<&'a str> {
        self.members.iter().map(|&c| p.label(c)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightKind {
    /// `(1, 1/2, 1/3, ...)`.
    Harmonic,
    /// Listed entries, then zeros.
    Truncated,
    /// Listed entries, then the last entry repeated.
    Explicit,
}

/// A non-increasing weight sequence with `w_1 = 1`, defining w-PAV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightScheme {
    kind: WeightKind,
    entries: Vec<Rational>,
}

impl WeightScheme {
    pub fn harmonic() -> Self {
        WeightScheme {
            kind: WeightKind::Harmonic,
            entries: Vec::new(),
        }
    }

    /// `(1, 0, 0, ...)`: Chamberlin–Courant on approval ballots.
    pub fn chamberlin_courant() -> Self {
        WeightScheme {
            kind: WeightKind::Truncated,
            entries: vec![Rational::one()],
        }
    }

    /// The listed entries followed by zeros; the cutoff is the entry count.
    pub fn truncated(entries: Vec<Rational>) -> Result<Self> {
        Self::validate(&entries)?;
        Ok(WeightScheme {
            kind: WeightKind::Truncated,
            entries,
        })
    }

    /// The listed entries followed by the last entry forever.
    pub fn explicit(entries: Vec<Rational>) -> Result<Self> {
        Self::validate(&entries)?;
        Ok(WeightScheme {
            kind: WeightKind::Explicit,
            entries,
        })
    }

    fn validate(entries: &[Rational]) -> Result<()> {
        match entries.first() {
            None => return Err(Error::InvalidWeights("no entries".into())),
            Some(w1) if !w1.is_one() => {
                return Err(Error::InvalidWeights("first weight must be 1".into()))
            }
            _ => {}
        }
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        if entries.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidWeights(
                "weights must be non-increasing".into(),
            ));
        }
        Ok(())
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `w_j` for `j >= 1`.
    pub fn weight(&self, j: usize) -> Rational {
        assert!(j >= 1, "weights are indexed from 1");
        match self.kind {
            WeightKind::Harmonic => Rational::new(BigInt::one(), BigInt::from(j)),
            WeightKind::Truncated => self
                .entries
                .get(j - 1)
                .cloned()
                .unwrap_or_else(Rational::zero),
            WeightKind::Explicit => self
                .entries
                .get(j - 1)
                .or_else(|| self.entries.last())
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    }

    /// The largest index with a positive weight, if weights eventually vanish.
    pub fn cutoff(&self) -> Option<usize> {
        match self.kind {
            WeightKind::Harmonic => None,
            WeightKind::Truncated => Some(self.last_positive()),
            WeightKind::Explicit => {
                if self.entries.last().is_some_and(Zero::is_zero) {
                    Some(self.last_positive())
                } else {
                    None
                }
            }
        }
    }

    fn last_positive(&self) -> usize {
        self.entries
            .iter()
            .rposition(|w| !w.is_zero())
            .map_or(0, |i| i + 1)
    }

    /// Cumulative weights `u(0..=max_p)`.
    pub fn cumulative_table(&self, max_p: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(max_p + 1);
        let mut acc = Rational::zero();
        out.push(acc.clone());
        for j in 1..=max_p {
            acc += self.weight(j);
            out.push(acc.clone());
        }
        out
    }
}

/// `u_w(p) = w_1 + ... + w_p`.
pub fn cumulative_weight(scheme: &WeightScheme, p: usize) -> Rational {
    (1..=p).map(|j| scheme.weight(j)).sum()
}
