//! Total-order refinements of dichotomous profiles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::c1p::check_permutation;
use crate::detection::{is_ci_axis, is_de_embedding, EuclideanEmbedding, Radii};
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, Rational};

/// A profile of strict rankings over `0..m`, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalOrderProfile {
    m: usize,
    rankings: Vec<Vec<usize>>,
}

impl TotalOrderProfile {
    pub fn new(m: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        for r in &rankings {
            check_permutation(r, m)?;
        }
        Ok(TotalOrderProfile { m, rankings })
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rankings(&self) -> &[Vec<usize>] {
        &self.rankings
    }

    pub fn ranking(&self, i: usize) -> &[usize] {
        &self.rankings[i]
    }

    /// `rank[i][c]` is the position of candidate `c` in ranking `i`.
    fn ranks(&self) -> Vec<Vec<usize>> {
        self.rankings
            .iter()
            .map(|r| {
                let mut pos = vec![0; self.m];
                for (k, &c) in r.iter().enumerate() {
                    pos[c] = k;
                }
                pos
            })
            .collect()
    }
}

/// Every ranking puts the voter's approved candidates above the others.
pub fn verify_refinement(p: &ApprovalProfile, t: &TotalOrderProfile) -> Result<bool> {
    if p.n() != t.n() || p.m() != t.m() {
        return Err(Error::DimensionMismatch(format!(
            "profile is {}x{}, rankings are {}x{}",
            p.n(),
            p.m(),
            t.n(),
            t.m()
        )));
    }
    Ok(p.votes().iter().zip(t.rankings()).all(|(v, r)| {
        let k = v.len();
        r[..k].iter().all(|&c| v.contains(c))
    }))
}

/// Single-peakedness via triples: for `a ⊲ b ⊲ c`, no voter ranks both
/// `a` and `c` above `b`.
pub fn single_peaked_triples(t: &TotalOrderProfile, axis: &[usize]) -> bool {
    if check_permutation(axis, t.m()).is_err() {
        return false;
    }
    t.ranks().iter().all(|rank| {
        let along: Vec<usize> = axis.iter().map(|&c| rank[c]).collect();
        // b must beat the worse of a and c: the better of everything on each
        // side bounds it.
        let m = along.len();
        let mut left_best = vec![usize::MAX; m];
        for j in 1..m {
            left_best[j] = left_best[j - 1].min(along[j - 1]);
        }
        let mut right_best = usize::MAX;
        for j in (0..m).rev() {
            if left_best[j] != usize::MAX
                && right_best != usize::MAX
                && along[j] > left_best[j].max(right_best)
            {
                return false;
            }
            right_best = right_best.min(along[j]);
        }
        true
    })
}

/// Single-peakedness via prefixes: every top-`k` set is contiguous on the
/// axis.
pub fn single_peaked_prefixes(t: &TotalOrderProfile, axis: &[usize]) -> bool {
    if check_permutation(axis, t.m()).is_err() {
        return false;
    }
    let mut pos = vec![0; t.m()];
    for (j, &c) in axis.iter().enumerate() {
        pos[c] = j;
    }
    t.rankings().iter().all(|r| {
        let Some(&top) = r.first() else { return true };
        let (mut lo, mut hi) = (pos[top], pos[top]);
        r[1..].iter().all(|&c| {
            if pos[c] + 1 == lo {
                lo -= 1;
                true
            } else if pos[c] == hi + 1 {
                hi += 1;
                true
            } else {
                false
            }
        })
    })
}

pub fn verify_single_peaked(t: &TotalOrderProfile, axis: &[usize]) -> bool {
    let by_triples = single_peaked_triples(t, axis);
    debug_assert_eq!(by_triples, single_peaked_prefixes(t, axis));
    by_triples
}

/// Along `order`, each pairwise comparison changes at most once.
pub fn verify_single_crossing(t: &TotalOrderProfile, order: &[usize]) -> bool {
    if check_permutation(order, t.n()).is_err() {
        return false;
    }
    let ranks = t.ranks();
    let m = t.m();
    for a in 0..m {
        for b in a + 1..m {
            let mut flips = 0;
            for w in order.windows(2) {
                if (ranks[w[0]][a] < ranks[w[0]][b]) != (ranks[w[1]][a] < ranks[w[1]][b]) {
                    flips += 1;
                }
            }
            if flips > 1 {
                return false;
            }
        }
    }
    true
}

/// Each voter ranks candidates by strictly increasing distance.
pub fn is_strict_euclidean(t: &TotalOrderProfile, e: &EuclideanEmbedding) -> bool {
    t.n() == e.voter_pos.len()
        && t.m() == e.candidate_pos.len()
        && t.rankings().iter().enumerate().all(|(i, r)| {
            let d: Vec<Rational> = r
                .iter()
                .map(|&c| (&e.voter_pos[i] - &e.candidate_pos[c]).abs())
                .collect();
            d.windows(2).all(|w| w[0] < w[1])
        })
}

/// Single-peaked refinement along a CI axis: each voter ranks its interval
/// left to right, then the candidates to its right, then those to its left
/// from nearest to farthest.
pub fn refine_psp(p: &ApprovalProfile, axis: &[usize]) -> Result<TotalOrderProfile> {
    check_permutation(axis, p.m())?;
    if !is_ci_axis(p, axis) {
        return Err(Error::InvalidWitness("CI".into()));
    }
    let mut pos = vec![0; p.m()];
    for (j, &c) in axis.iter().enumerate() {
        pos[c] = j;
    }
    let rankings = p
        .votes()
        .iter()
        .map(|v| {
            let l = v.iter().map(|c| pos[c]).min().unwrap_or(0);
            let r = v.iter().map(|c| pos[c]).max().unwrap_or(0);
            let mut out: Vec<usize> = axis[l..].to_vec();
            out.extend(axis[..l].iter().rev());
            debug_assert!(v.is_empty() || out[..=r - l].iter().all(|&c| v.contains(c)));
            out
        })
        .collect();
    TotalOrderProfile::new(p.m(), rankings)
}

fn int(x: usize) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// Smallest positive gap between consecutive values of `xs` once sorted.
fn min_positive_gap(xs: &mut [Rational]) -> Option<Rational> {
    xs.sort();
    xs.windows(2)
        .map(|w| &w[1] - &w[0])
        .filter(|d| d.is_positive())
        .min()
}

/// Smallest positive difference among candidate coordinates and among the
/// distances from any one voter.
fn resolution(voters: &[Rational], candidates: &[Rational]) -> Rational {
    let mut best = min_positive_gap(&mut candidates.to_vec());
    for x in voters {
        let mut d: Vec<Rational> = candidates.iter().map(|y| (x - y).abs()).collect();
        d.push(Rational::zero());
        if let Some(g) = min_positive_gap(&mut d) {
            best = Some(best.map_or(g.clone(), |b| b.min(g)));
        }
    }
    best.unwrap_or_else(Rational::one)
}

/// 1-Euclidean refinement of a DE profile: candidates sharing a coordinate
/// are spread apart in index order, then voters move left by a quarter of
/// the smallest distance gap so every tie goes to the smaller coordinate.
/// Returns the rankings and the perturbed embedding, whose radii sit halfway
/// between the farthest approved and nearest disapproved candidate.
pub fn refine_pe(
    p: &ApprovalProfile,
    e: &EuclideanEmbedding,
) -> Result<(TotalOrderProfile, EuclideanEmbedding)> {
    if !is_de_embedding(p, e) {
        return Err(Error::InvalidWitness("DE".into()));
    }
    let m = p.m();
    let g = resolution(&e.voter_pos, &e.candidate_pos);
    let mut by_coord: Vec<usize> = (0..m).collect();
    by_coord.sort_by(|&a, &b| e.candidate_pos[a].cmp(&e.candidate_pos[b]).then(a.cmp(&b)));
    let step = &g / int(8 * m);
    let mut candidate_pos = e.candidate_pos.clone();
    let mut run = 0;
    for w in 1..m {
        let (prev, cur) = (by_coord[w - 1], by_coord[w]);
        run = if e.candidate_pos[prev] == e.candidate_pos[cur] {
            run + 1
        } else {
            0
        };
        candidate_pos[cur] = &e.candidate_pos[cur] + &step * int(run);
    }
    let eps = resolution(&e.voter_pos, &candidate_pos) / int(4);
    let voter_pos: Vec<Rational> = e.voter_pos.iter().map(|x| x - &eps).collect();

    let mut rankings = Vec::with_capacity(p.n());
    let mut radii = Vec::with_capacity(p.n());
    for (i, x) in voter_pos.iter().enumerate() {
        let d: Vec<Rational> = candidate_pos.iter().map(|y| (x - y).abs()).collect();
        let mut r: Vec<usize> = (0..m).collect();
        r.sort_by(|&a, &b| {
            d[a].cmp(&d[b])
                .then(candidate_pos[a].cmp(&candidate_pos[b]))
        });
        let k = p.vote(i).len();
        let two = int(2);
        radii.push(match (k, k == m) {
            (0, _) => &d[r[0]] / &two,
            (_, true) => &d[r[m - 1]] + Rational::one(),
            _ => (&d[r[k - 1]] + &d[r[k]]) / &two,
        });
        rankings.push(r);
    }
    let t = TotalOrderProfile::new(m, rankings)?;
    let out = EuclideanEmbedding {
        voter_pos,
        candidate_pos,
        radii: Radii::PerVoter(radii),
    };
    Ok((t, out))
}

/// Voters ordered by position, ties by index.
pub fn position_order(e: &EuclideanEmbedding) -> Vec<usize> {
    let mut order: Vec<usize> = (0..e.voter_pos.len()).collect();
    order.sort_by(|&a, &b| e.voter_pos[a].cmp(&e.voter_pos[b]).then(a.cmp(&b)));
    order
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

const START: u8 = 0;
const SEEN_A: u8 = 1;
const SEEN_B: u8 = 2;
const A_THEN_B: u8 = 3;
const B_THEN_A: u8 = 4;

fn step(state: u8, a_first: bool) -> Option<u8> {
    match (state, a_first) {
        (START | SEEN_A, true) => Some(SEEN_A),
        (START | SEEN_B, false) => Some(SEEN_B),
        (SEEN_A | A_THEN_B, false) => Some(A_THEN_B),
        (SEEN_B | B_THEN_A, true) => Some(B_THEN_A),
        _ => None,
    }
}

fn all_perms(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in all_perms(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

struct PscSearch {
    m: usize,
    options: Vec<Vec<Vec<usize>>>,
    used: Vec<bool>,
}

impl PscSearch {
    fn run(&mut self, state: &[u8], placed: usize) -> bool {
        if placed == self.options.len() {
            return true;
        }
        for i in 0..self.options.len() {
            if self.used[i] {
                continue;
            }
            self.used[i] = true;
            for k in 0..self.options[i].len() {
                let r = &self.options[i][k];
                let mut rank = vec![0; self.m];
                for (j, &c) in r.iter().enumerate() {
                    rank[c] = j;
                }
                let mut next = Vec::with_capacity(state.len());
                let mut idx = 0;
                let mut ok = true;
                'pairs: for a in 0..self.m {
                    for b in a + 1..self.m {
                        match step(state[idx], rank[a] < rank[b]) {
                            Some(s) => next.push(s),
                            None => {
                                ok = false;
                                break 'pairs;
                            }
                        }
                        idx += 1;
                    }
                }
                if ok && self.run(&next, placed + 1) {
                    return true;
                }
            }
            self.used[i] = false;
        }
        false
    }
}

/// Whether some refinement of `p` is single-crossing for some voter order,
/// by enumeration. `None` when the number of (refinement, order) pairs
/// exceeds `budget`.
pub fn psc_exhaustive(p: &ApprovalProfile, budget: u64) -> Option<bool> {
    let refinements: f64 = p
        .votes()
        .iter()
        .map(|v| factorial(v.len()) * factorial(p.m() - v.len()))
        .product();
    if refinements * factorial(p.n()) > budget as f64 {
        return None;
    }
    let options = p
        .votes()
        .iter()
        .map(|v| {
            let top = all_perms(&v.to_vec());
            let bottom = all_perms(&v.complement().to_vec());
            top.iter()
                .flat_map(|t| {
                    bottom
                        .iter()
                        .map(move |b| [t.as_slice(), b.as_slice()].concat())
                })
                .collect()
        })
        .collect();
    let mut s = PscSearch {
        m: p.m(),
        options,
        used: vec![false; p.n()],
    };
    let pairs = p.m() * p.m().saturating_sub(1) / 2;
    Some(s.run(&vec![START; pairs], 0))
}

pub const PSC_BUDGET: u64 = 1_000_000;
