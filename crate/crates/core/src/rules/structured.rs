//! Committee selection on VEI, CEI, WSC and PART profiles.

use std::cmp::Reverse;

use num_bigint::BigInt;

use super::{check_k, pad, score, Algorithm, DistinctVotes, Rule, Score, Solution, Utilities};
use crate::detection::{is_cei_axis, is_vei_order, part_witness, wsc_characterize};
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet, Committee, Rational};

fn utilities(rule: &Rule, k: usize) -> Option<Utilities> {
    match rule {
        Rule::Wpav(s) => Some(Utilities::new(s, k)),
        Rule::Mav => None,
    }
}

/// Keeps the better of two `(score, committee)` pairs, preferring the
/// lexicographically smaller committee on equal scores.
fn keep_best(best: &mut Option<(Score, Committee)>, s: Score, w: Committee) {
    let replace = match best {
        None => true,
        Some((bs, bw)) => s.beats(bs) || (s == *bs && w < *bw),
    };
    if replace {
        *best = Some((s, w));
    }
}

/// Along a VEI voter order, each candidate is approved by everyone, by a
/// prefix, by a suffix, or by no one; longer prefixes (suffixes) dominate.
pub fn vei_committee(
    p: &ApprovalProfile,
    order: &[usize],
    k: usize,
    rule: &Rule,
) -> Result<Solution> {
    check_k(p, k)?;
    if !is_vei_order(p, order) {
        return Err(Error::InvalidWitness("VEI".into()));
    }
    let (first, last) = (p.vote(order[0]), p.vote(order[p.n() - 1]));
    let c1 = first.intersection(last).to_vec();
    let approvers: Vec<usize> = (0..p.m()).map(|c| p.approvers(c).len()).collect();
    let mut c2 = first.difference(last).to_vec();
    c2.sort_by_key(|&c| (Reverse(approvers[c]), c));
    let mut c3 = last.difference(first).to_vec();
    c3.sort_by_key(|&c| (Reverse(approvers[c]), c));

    let approved = c1.len() + c2.len() + c3.len();
    let committee = if approved <= k {
        pad([c1, c2, c3].concat(), k, p.m())
    } else if c1.len() >= k {
        pad(c1[..k].to_vec(), k, p.m())
    } else {
        let rest = k - c1.len();
        let mut best = None;
        for q in rest.saturating_sub(c3.len())..=rest.min(c2.len()) {
            let chosen = [&c1[..], &c2[..q], &c3[..rest - q]].concat();
            let w = pad(chosen, k, p.m());
            keep_best(&mut best, score(p, rule, &w)?, w);
        }
        best.expect("some split is feasible").1
    };
    let s = score(p, rule, &committee)?;
    Ok(Solution::new(s, committee, Algorithm::Vei))
}

enum Resolve {
    /// Vote `[0, e)` along the axis: resolved once `e` positions are seen.
    Prefix,
    /// Vote `[b, m)`: resolved after `b` positions, with `k - ℓ` members.
    Suffix,
}

/// Left-to-right over a CEI axis, tracking how many of the first `j`
/// positions are chosen; prefix votes are scored at their right end and
/// suffix votes just before their left end.
pub fn cei_committee(
    p: &ApprovalProfile,
    axis: &[usize],
    k: usize,
    rule: &Rule,
) -> Result<Solution> {
    check_k(p, k)?;
    if !is_cei_axis(p, axis) {
        return Err(Error::InvalidWitness("CEI".into()));
    }
    let m = p.m();
    let first = axis[0];
    // Votes resolved at each j in 0..=m, as (kind, vote length).
    let mut at: Vec<Vec<(Resolve, usize)>> = (0..=m).map(|_| Vec::new()).collect();
    let (mut empty, mut full) = (0usize, 0usize);
    for v in p.votes() {
        let len = v.len();
        if len == 0 {
            empty += 1;
        } else if len == m {
            full += 1;
        } else if v.contains(first) {
            at[len].push((Resolve::Prefix, len));
        } else {
            at[m - len].push((Resolve::Suffix, len));
        }
    }
    let feasible = |j: usize, l: usize| l <= j && l <= k && k - l <= m - j;
    // Members of vote `v` chosen, when `l` of the first `j` positions are.
    let inside = |r: &Resolve, l: usize| match r {
        Resolve::Prefix => l,
        Resolve::Suffix => k - l,
    };

    // back[j][l]: whether position j-1 is chosen on the best path to (j, l).
    let mut back = vec![vec![false; k + 1]; m + 1];
    let width = k + 1;
    let (committee_x, sc) = match rule {
        Rule::Wpav(scheme) => {
            let u = Utilities::new(scheme, k);
            let mut val: Vec<Option<BigInt>> = vec![None; width];
            val[0] = Some(BigInt::from(0));
            for j in 1..=m {
                let mut next: Vec<Option<BigInt>> = vec![None; width];
                for l in 0..width {
                    if !feasible(j, l) {
                        continue;
                    }
                    let stay = val[l].clone();
                    let take = if l > 0 { val[l - 1].clone() } else { None };
                    let (best, took) = match (stay, take) {
                        (Some(a), Some(b)) if b > a => (b, true),
                        (Some(a), _) => (a, false),
                        (None, Some(b)) => (b, true),
                        (None, None) => continue,
                    };
                    let gain: BigInt = at[j].iter().map(|(r, _)| &u.u[inside(r, l)]).sum();
                    next[l] = Some(best + gain);
                    back[j][l] = took;
                }
                val = next;
            }
            let total = val[k].clone().expect("k <= m") + BigInt::from(full) * &u.u[k];
            (back, u.score(total))
        }
        Rule::Mav => {
            let dist = |r: &Resolve, len: usize, l: usize| k + len - 2 * inside(r, l);
            let mut base = 0;
            if empty > 0 {
                base = base.max(k);
            }
            if full > 0 {
                base = base.max(m - k);
            }
            let mut val: Vec<Option<usize>> = vec![None; width];
            val[0] = Some(base);
            for j in 1..=m {
                let mut next: Vec<Option<usize>> = vec![None; width];
                for l in 0..width {
                    if !feasible(j, l) {
                        continue;
                    }
                    let stay = val[l];
                    let take = if l > 0 { val[l - 1] } else { None };
                    let (best, took) = match (stay, take) {
                        (Some(a), Some(b)) if b < a => (b, true),
                        (Some(a), _) => (a, false),
                        (None, Some(b)) => (b, true),
                        (None, None) => continue,
                    };
                    let worst = at[j]
                        .iter()
                        .map(|(r, len)| dist(r, *len, l))
                        .max()
                        .unwrap_or(0);
                    next[l] = Some(best.max(worst));
                    back[j][l] = took;
                }
                val = next;
            }
            (back, Score::Mav(val[k].expect("k <= m")))
        }
    };
    let mut members = Vec::with_capacity(k);
    let mut l = k;
    for j in (1..=m).rev() {
        if committee_x[j][l] {
            members.push(axis[j - 1]);
            l -= 1;
        }
    }
    members.sort_unstable();
    Ok(Solution::new(
        sc,
        Committee::from_sorted_unchecked(members),
        Algorithm::Cei,
    ))
}

/// Candidates in one of the four blocks of a WSC profile are
/// interchangeable, so only the number taken from each block matters.
pub fn wsc_committee(p: &ApprovalProfile, k: usize, rule: &Rule) -> Result<Solution> {
    check_k(p, k)?;
    let t = wsc_characterize(p).ok_or_else(|| Error::NotInDomain("WSC".into()))?;
    let blocks: Vec<Vec<usize>> = t.blocks.iter().map(CandidateSet::to_vec).collect();
    let votes = DistinctVotes::new(p);
    let u = utilities(rule, k);
    let mut best = None;
    for k1 in 0..=k.min(blocks[0].len()) {
        for k2 in 0..=(k - k1).min(blocks[1].len()) {
            for k3 in 0..=(k - k1 - k2).min(blocks[2].len()) {
                let k4 = k - k1 - k2 - k3;
                if k4 > blocks[3].len() {
                    continue;
                }
                let mut members: Vec<usize> = [(0, k1), (1, k2), (2, k3), (3, k4)]
                    .iter()
                    .flat_map(|&(b, c)| blocks[b][..c].iter().copied())
                    .collect();
                members.sort_unstable();
                let set = CandidateSet::from_indices(p.m(), members.iter().copied());
                keep_best(
                    &mut best,
                    votes.score(rule, u.as_ref(), &set),
                    Committee::from_sorted_unchecked(members),
                );
            }
        }
    }
    let (s, w) = best.expect("k <= m");
    Ok(Solution::new(s, w, Algorithm::Wsc))
}

/// On PART profiles, w-PAV is solved greedily by marginal gain per part
/// and MAV by the smallest feasible per-part quotas.
pub fn part_committee(p: &ApprovalProfile, k: usize, rule: &Rule) -> Result<Solution> {
    check_k(p, k)?;
    let parts = part_witness(p).ok_or_else(|| Error::NotInDomain("PART".into()))?;
    let mult: Vec<usize> = parts
        .iter()
        .map(|s| p.votes().iter().filter(|v| *v == s).count())
        .collect();
    let members: Vec<Vec<usize>> = parts.iter().map(CandidateSet::to_vec).collect();
    let m = p.m();
    let committee = match rule {
        Rule::Wpav(scheme) => {
            let mut taken = vec![0usize; parts.len()];
            for _ in 0..k {
                let mut pick: Option<(Rational, usize)> = None;
                for j in (0..parts.len()).filter(|&j| taken[j] < members[j].len()) {
                    let gain = scheme.weight(taken[j] + 1) * Rational::from_integer(mult[j].into());
                    if pick.as_ref().is_none_or(|(g, _)| gain > *g) {
                        pick = Some((gain, j));
                    }
                }
                let j = pick.expect("k <= m").1;
                taken[j] += 1;
            }
            let chosen = (0..parts.len())
                .flat_map(|j| members[j][..taken[j]].to_vec())
                .collect();
            pad(chosen, k, m)
        }
        Rule::Mav => {
            let quotas = (0..=k + m)
                .find_map(|t| {
                    let q: Vec<usize> = members
                        .iter()
                        .map(|s| (s.len() + k).saturating_sub(t).div_ceil(2))
                        .collect();
                    let ok = q.iter().zip(&members).all(|(q, s)| *q <= s.len())
                        && q.iter().sum::<usize>() <= k;
                    ok.then_some(q)
                })
                .expect("t = k + m is always feasible");
            let chosen = (0..parts.len())
                .flat_map(|j| members[j][..quotas[j]].to_vec())
                .collect();
            pad(chosen, k, m)
        }
    };
    let s = score(p, rule, &committee)?;
    Ok(Solution::new(s, committee, Algorithm::Part))
}
