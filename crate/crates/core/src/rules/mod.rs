//! Committee selection under w-PAV and MAV.

mod dp_ci;
mod dp_vi;
mod layer;
mod structured;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::detection::{cei_axis, ci_axis, part_witness, vei_order, vi_order, wsc_characterize};
use crate::error::{Error, Result};
use crate::profile::{
    profile_stats, ApprovalProfile, CandidateSet, Committee, Rational, WeightScheme,
};

pub use dp_ci::{pav_ci_bounded_d, pav_ci_bounded_s};
pub use dp_vi::{pav_vi_bounded_d, pav_vi_bounded_s};
pub use structured::{cei_committee, part_committee, vei_committee, wsc_committee};

/// Default cap on the number of committees the oracle enumerates.
pub const ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Wpav(WeightScheme),
    Mav,
}

impl Rule {
    pub fn pav() -> Self {
        Rule::Wpav(WeightScheme::harmonic())
    }
}

/// A w-PAV score (maximized) or a MAV score (minimized).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Score {
    Wpav(Rational),
    Mav(usize),
}

impl Score {
    pub fn as_rational(&self) -> Rational {
        match self {
            Score::Wpav(r) => r.clone(),
            Score::Mav(d) => Rational::from_integer(BigInt::from(*d)),
        }
    }

    /// Strictly better than `other` under the same rule.
    pub fn beats(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Wpav(a), Score::Wpav(b)) => a > b,
            (Score::Mav(a), Score::Mav(b)) => a < b,
            _ => panic!("comparing scores of different rules"),
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Wpav(r) => write!(f, "{r}"),
            Score::Mav(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BruteForce,
    PavViBoundedS,
    PavCiBoundedS,
    PavCiBoundedD,
    PavViBoundedD,
    WpavTruncatedVi,
    WpavTruncatedCi,
    Vei,
    Cei,
    Wsc,
    Part,
}

impl Algorithm {
    pub const ALL: [Algorithm; 11] = [
        Algorithm::BruteForce,
        Algorithm::PavViBoundedS,
        Algorithm::PavCiBoundedS,
        Algorithm::PavCiBoundedD,
        Algorithm::PavViBoundedD,
        Algorithm::WpavTruncatedVi,
        Algorithm::WpavTruncatedCi,
        Algorithm::Vei,
        Algorithm::Cei,
        Algorithm::Wsc,
        Algorithm::Part,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute_force",
            Algorithm::PavViBoundedS => "pav_vi_bounded_s",
            Algorithm::PavCiBoundedS => "pav_ci_bounded_s",
            Algorithm::PavCiBoundedD => "pav_ci_bounded_d",
            Algorithm::PavViBoundedD => "pav_vi_bounded_d",
            Algorithm::WpavTruncatedVi => "wpav_truncated_vi",
            Algorithm::WpavTruncatedCi => "wpav_truncated_ci",
            Algorithm::Vei => "vei_committee",
            Algorithm::Cei => "cei_committee",
            Algorithm::Wsc => "wsc_committee",
            Algorithm::Part => "part_committee",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s || a.name().strip_suffix("_committee") == Some(s.as_str()))
            .ok_or_else(|| Error::Unsupported(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub score: Score,
    pub committee: Committee,
    pub algorithm: Algorithm,
    /// Every optimal committee; filled by the oracle only.
    pub optimal_set: Option<Vec<Committee>>,
}

impl Solution {
    pub(crate) fn new(score: Score, committee: Committee, algorithm: Algorithm) -> Self {
        Solution {
            score,
            committee,
            algorithm,
            optimal_set: None,
        }
    }
}

fn check_committee(p: &ApprovalProfile, w: &Committee) -> Result<()> {
    match w.members().last() {
        Some(&c) if c >= p.m() => Err(Error::CandidateOutOfRange { index: c, m: p.m() }),
        _ => Ok(()),
    }
}

/// `Σ_i u(|W ∩ v_i|)`.
pub fn score_wpav(p: &ApprovalProfile, scheme: &WeightScheme, w: &Committee) -> Result<Rational> {
    check_committee(p, w)?;
    let u = scheme.cumulative_table(w.k());
    let set = w.to_set(p.m());
    Ok(p.votes()
        .iter()
        .map(|v| u[v.intersection_len(&set)].clone())
        .sum())
}

/// `max_i |W Δ v_i|`.
pub fn score_mav(p: &ApprovalProfile, w: &Committee) -> Result<usize> {
    check_committee(p, w)?;
    let set = w.to_set(p.m());
    Ok(p.votes()
        .iter()
        .map(|v| w.k() + v.len() - 2 * v.intersection_len(&set))
        .max()
        .unwrap_or(0))
}

pub fn score(p: &ApprovalProfile, rule: &Rule, w: &Committee) -> Result<Score> {
    match rule {
        Rule::Wpav(s) => score_wpav(p, s, w).map(Score::Wpav),
        Rule::Mav => score_mav(p, w).map(Score::Mav),
    }
}

/// Cumulative weights scaled to integers by a common denominator.
pub(crate) struct Utilities {
    pub u: Vec<BigInt>,
    den: BigInt,
}

impl Utilities {
    pub fn new(scheme: &WeightScheme, max: usize) -> Self {
        let table = scheme.cumulative_table(max);
        let den = table
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let u = table
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        Utilities { u, den }
    }

    pub fn score(&self, total: BigInt) -> Score {
        Score::Wpav(Rational::new(total, self.den.clone()))
    }
}

pub(crate) fn check_k(p: &ApprovalProfile, k: usize) -> Result<()> {
    if k > p.m() {
        Err(Error::CommitteeTooLarge { k, m: p.m() })
    } else {
        Ok(())
    }
}

/// Adds the lowest-index candidates not yet chosen until `k` are chosen.
pub(crate) fn pad(mut chosen: Vec<usize>, k: usize, m: usize) -> Committee {
    let taken = CandidateSet::from_indices(m, chosen.iter().copied());
    let missing = k.saturating_sub(chosen.len());
    chosen.extend((0..m).filter(|&c| !taken.contains(c)).take(missing));
    chosen.sort_unstable();
    Committee::from_sorted_unchecked(chosen)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Enumerates every size-`k` committee; returns the lexicographically
/// smallest optimum together with the full set of optima.
pub fn brute_force(p: &ApprovalProfile, k: usize, rule: &Rule, budget: u64) -> Result<Solution> {
    check_k(p, k)?;
    let count = binomial(p.m(), k);
    if count > budget as u128 {
        return Err(Error::OverLimit {
            size: usize::try_from(count).unwrap_or(usize::MAX),
            limit: budget as usize,
        });
    }
    let (m, n) = (p.m(), p.n());
    let u = match rule {
        Rule::Wpav(s) => Some(Utilities::new(s, k)),
        Rule::Mav => None,
    };
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<(Score, Vec<Committee>)> = None;
    loop {
        let set = CandidateSet::from_indices(m, idx.iter().copied());
        let s = match &u {
            Some(u) => {
                let total: BigInt = p
                    .votes()
                    .iter()
                    .map(|v| &u.u[v.intersection_len(&set)])
                    .sum();
                u.score(total)
            }
            None => Score::Mav(
                (0..n)
                    .map(|i| k + p.vote(i).len() - 2 * p.vote(i).intersection_len(&set))
                    .max()
                    .unwrap_or(0),
            ),
        };
        let w = Committee::from_sorted_unchecked(idx.clone());
        match &mut best {
            Some((b, set)) if *b == s => set.push(w),
            Some((b, _)) if !s.beats(b) => {}
            _ => best = Some((s, vec![w])),
        }
        // Next combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    let (score, set) = best.expect("at least one committee");
    Ok(Solution {
        score,
        committee: set[0].clone(),
        algorithm: Algorithm::BruteForce,
        optimal_set: Some(set),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Force(Algorithm),
    Oracle,
}

/// Largest vote size for the subset-tracking dynamic programs in auto mode.
const AUTO_MAX_S: usize = 8;
/// Largest `(k+1)^d` for the count-vector dynamic programs in auto mode.
const AUTO_MAX_STATES: f64 = 1e6;
/// Largest cutoff for the truncated-weight dynamic programs in auto mode.
const AUTO_MAX_CUTOFF: usize = 3;

fn require<T>(x: Option<T>, what: &str) -> Result<T> {
    x.ok_or_else(|| Error::NotInDomain(what.into()))
}

fn wpav_scheme(rule: &Rule, alg: Algorithm) -> Result<&WeightScheme> {
    match rule {
        Rule::Wpav(s) => Ok(s),
        Rule::Mav => Err(Error::Unsupported(format!("{} under MAV", alg.name()))),
    }
}

fn run(p: &ApprovalProfile, k: usize, rule: &Rule, alg: Algorithm) -> Result<Solution> {
    match alg {
        Algorithm::BruteForce => brute_force(p, k, rule, ORACLE_BUDGET),
        Algorithm::Part => part_committee(p, k, rule),
        Algorithm::Wsc => wsc_committee(p, k, rule),
        Algorithm::Vei => vei_committee(p, &require(vei_order(p), "VEI")?, k, rule),
        Algorithm::Cei => cei_committee(p, &require(cei_axis(p), "CEI")?, k, rule),
        Algorithm::PavViBoundedS => {
            pav_vi_bounded_s(p, &require(vi_order(p), "VI")?, k, wpav_scheme(rule, alg)?)
        }
        Algorithm::PavViBoundedD => {
            pav_vi_bounded_d(p, &require(vi_order(p), "VI")?, k, wpav_scheme(rule, alg)?)
        }
        Algorithm::PavCiBoundedS => {
            pav_ci_bounded_s(p, &require(ci_axis(p), "CI")?, k, wpav_scheme(rule, alg)?)
        }
        Algorithm::PavCiBoundedD => {
            pav_ci_bounded_d(p, &require(ci_axis(p), "CI")?, k, wpav_scheme(rule, alg)?)
        }
        Algorithm::WpavTruncatedVi => {
            dp_vi::wpav_truncated_vi(p, &require(vi_order(p), "VI")?, k, wpav_scheme(rule, alg)?)
        }
        Algorithm::WpavTruncatedCi => {
            dp_ci::wpav_truncated_ci(p, &require(ci_axis(p), "CI")?, k, wpav_scheme(rule, alg)?)
        }
    }
}

/// Which structure a truncated-weight dynamic program runs along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    Vi,
    Ci,
}

/// w-PAV with weights vanishing after the cutoff, along a VI voter order or
/// a CI candidate axis.
pub fn wpav_truncated(
    p: &ApprovalProfile,
    order: &[usize],
    kind: AxisKind,
    scheme: &WeightScheme,
    k: usize,
) -> Result<Solution> {
    match kind {
        AxisKind::Vi => dp_vi::wpav_truncated_vi(p, order, k, scheme),
        AxisKind::Ci => dp_ci::wpav_truncated_ci(p, order, k, scheme),
    }
}

fn auto_algorithm(p: &ApprovalProfile, k: usize, rule: &Rule) -> Result<Algorithm> {
    if part_witness(p).is_some() {
        return Ok(Algorithm::Part);
    }
    if wsc_characterize(p).is_some() {
        return Ok(Algorithm::Wsc);
    }
    if vei_order(p).is_some() {
        return Ok(Algorithm::Vei);
    }
    if cei_axis(p).is_some() {
        return Ok(Algorithm::Cei);
    }
    if let Rule::Wpav(scheme) = rule {
        let ci = ci_axis(p).is_some();
        let vi = vi_order(p).is_some();
        let stats = profile_stats(p);
        if scheme.cutoff().is_some_and(|c| c <= AUTO_MAX_CUTOFF) {
            if ci {
                return Ok(Algorithm::WpavTruncatedCi);
            }
            if vi {
                return Ok(Algorithm::WpavTruncatedVi);
            }
        }
        let small_s = stats.max_vote_size <= AUTO_MAX_S;
        let small_d = ((k + 1) as f64).powi(stats.max_degree as i32) <= AUTO_MAX_STATES;
        if ci && small_s {
            return Ok(Algorithm::PavCiBoundedS);
        }
        if vi && small_s {
            return Ok(Algorithm::PavViBoundedS);
        }
        if ci && small_d {
            return Ok(Algorithm::PavCiBoundedD);
        }
        if vi && small_d {
            return Ok(Algorithm::PavViBoundedD);
        }
    }
    if binomial(p.m(), k) <= ORACLE_BUDGET as u128 {
        return Ok(Algorithm::BruteForce);
    }
    Err(Error::NoApplicableAlgorithm(format!(
        "no structured algorithm applies and C({}, {k}) exceeds the oracle budget",
        p.m()
    )))
}

/// Computes a winning committee. `Auto` picks the first applicable
/// structured algorithm and falls back to the oracle within budget.
pub fn solve(p: &ApprovalProfile, k: usize, rule: &Rule, strategy: Strategy) -> Result<Solution> {
    check_k(p, k)?;
    let alg = match strategy {
        Strategy::Auto => auto_algorithm(p, k, rule)?,
        Strategy::Force(a) => a,
        Strategy::Oracle => Algorithm::BruteForce,
    };
    run(p, k, rule, alg)
}

/// Scores of the distinct votes with multiplicities, for evaluating many
/// committees quickly.
pub(crate) struct DistinctVotes {
    votes: Vec<(CandidateSet, usize)>,
}

impl DistinctVotes {
    pub fn new(p: &ApprovalProfile) -> Self {
        let mut votes: Vec<(CandidateSet, usize)> = Vec::new();
        for v in p.votes() {
            match votes.iter_mut().find(|(x, _)| x == v) {
                Some((_, c)) => *c += 1,
                None => votes.push((v.clone(), 1)),
            }
        }
        DistinctVotes { votes }
    }

    pub fn score(&self, rule: &Rule, u: Option<&Utilities>, w: &CandidateSet) -> Score {
        let k = w.len();
        match (rule, u) {
            (Rule::Wpav(_), Some(u)) => {
                let total: BigInt = self
                    .votes
                    .iter()
                    .map(|(v, c)| &u.u[v.intersection_len(w)] * BigInt::from(*c))
                    .fold(BigInt::zero(), |a, b| a + b);
                u.score(total)
            }
            _ => Score::Mav(
                self.votes
                    .iter()
                    .map(|(v, _)| k + v.len() - 2 * v.intersection_len(w))
                    .max()
                    .unwrap_or(0),
            ),
        }
    }
}
