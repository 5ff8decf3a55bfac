//! Dynamic programs along a VI voter order.

use std::cmp::Reverse;
use std::collections::HashMap;

use num_bigint::BigInt;

use super::layer::{Layer, Trace};
use super::{check_k, pad, Algorithm, Solution, Utilities};
use crate::detection::is_vi_order;
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, WeightScheme};

/// Largest vote size the subset-tracking program accepts.
const MAX_S: usize = 20;

fn ordered_votes(p: &ApprovalProfile, order: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !is_vi_order(p, order) {
        return Err(Error::InvalidWitness("VI".into()));
    }
    Ok(order.iter().map(|&i| p.vote(i).to_vec()).collect())
}

/// Candidates of `cur` missing from `prev`; along a VI order these have no
/// earlier approver.
fn fresh(prev: Option<&Vec<usize>>, cur: &[usize]) -> Vec<usize> {
    cur.iter()
        .copied()
        .filter(|c| prev.is_none_or(|p| p.binary_search(c).is_err()))
        .collect()
}

/// Tracks which members of the current vote are chosen. Cost grows as
/// `4^s` with `s` the largest vote size.
pub fn pav_vi_bounded_s(
    p: &ApprovalProfile,
    order: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    let votes = ordered_votes(p, order)?;
    let s = votes.iter().map(Vec::len).max().unwrap_or(0);
    if s > MAX_S {
        return Err(Error::OverLimit {
            size: s,
            limit: MAX_S,
        });
    }
    let kk = k.min(p.approved_candidates().len());
    let u = Utilities::new(scheme, kk);
    let width = kk + 1;

    let mut vals: Vec<Option<BigInt>> = vec![None; width];
    vals[0] = Some(BigInt::from(0));
    let mut prev_len = 0usize;
    // Per voter, for each (mask, ℓ): previous mask and the fresh bits added.
    let mut backs: Vec<Vec<(u32, u32)>> = Vec::with_capacity(votes.len());
    for (i, cur) in votes.iter().enumerate() {
        let prev = i.checked_sub(1).map(|j| &votes[j]);
        let fresh_mask: u32 = cur
            .iter()
            .enumerate()
            .filter(|(_, c)| prev.is_none_or(|p| p.binary_search(c).is_err()))
            .fold(0, |acc, (t, _)| acc | 1 << t);
        // Image in `cur` of each subset of `prev`.
        let mut carry = vec![0u32; 1 << prev_len];
        if let Some(prev) = prev {
            for pm in 1..carry.len() {
                let t = pm.trailing_zeros() as usize;
                let bit = cur.binary_search(&prev[t]).map_or(0, |x| 1u32 << x);
                carry[pm] = carry[pm & (pm - 1)] | bit;
            }
        }
        let size = 1usize << cur.len();
        let mut next: Vec<Option<BigInt>> = vec![None; size * width];
        let mut back = vec![(0u32, 0u32); size * width];
        for (pm, &kept) in carry.iter().enumerate() {
            for l in 0..width {
                let Some(v) = &vals[pm * width + l] else {
                    continue;
                };
                let mut d = fresh_mask;
                loop {
                    let nl = l + d.count_ones() as usize;
                    if nl <= kk {
                        let a = (kept | d) as usize;
                        let cand = v + &u.u[a.count_ones() as usize];
                        let slot = a * width + nl;
                        if next[slot].as_ref().is_none_or(|x| cand > *x) {
                            next[slot] = Some(cand);
                            back[slot] = (pm as u32, d);
                        }
                    }
                    if d == 0 {
                        break;
                    }
                    d = (d - 1) & fresh_mask;
                }
            }
        }
        backs.push(back);
        vals = next;
        prev_len = cur.len();
    }

    let size = 1usize << prev_len;
    let (best_mask, best) = (0..size)
        .filter_map(|a| vals[a * width + kk].as_ref().map(|v| (a, v)))
        .fold(None::<(usize, &BigInt)>, |acc, (a, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((a, v)),
        })
        .expect("choosing every approved candidate is feasible");
    let total = best.clone();

    let mut chosen = Vec::with_capacity(k);
    let (mut mask, mut l) = (best_mask, kk);
    for i in (0..votes.len()).rev() {
        let width_slot = mask * width + l;
        let (pm, d) = backs[i][width_slot];
        chosen.extend(
            (0..votes[i].len())
                .filter(|t| d >> t & 1 == 1)
                .map(|t| votes[i][t]),
        );
        l -= d.count_ones() as usize;
        mask = pm as usize;
    }
    Ok(Solution::new(
        u.score(total),
        pad(chosen, k, p.m()),
        Algorithm::PavViBoundedS,
    ))
}

/// Groups of candidates sharing an approver interval `[b, e]` along the order.
struct Groups {
    members: Vec<Vec<usize>>,
    end: Vec<usize>,
    starting: Vec<Vec<usize>>,
}

fn approver_groups(p: &ApprovalProfile, order: &[usize]) -> Groups {
    let n = order.len();
    let mut span: Vec<Option<(usize, usize)>> = vec![None; p.m()];
    for (pos, &i) in order.iter().enumerate() {
        for c in p.vote(i).iter() {
            span[c] = Some(span[c].map_or((pos, pos), |(b, _)| (b, pos)));
        }
    }
    let mut by_span: HashMap<(usize, usize), usize> = HashMap::new();
    let mut g = Groups {
        members: Vec::new(),
        end: Vec::new(),
        starting: vec![Vec::new(); n],
    };
    for (c, s) in span.iter().enumerate() {
        let Some((b, e)) = *s else { continue };
        let id = *by_span.entry((b, e)).or_insert_with(|| {
            g.members.push(Vec::new());
            g.end.push(e);
            g.starting[b].push(g.members.len() - 1);
            g.members.len() - 1
        });
        g.members[id].push(c);
    }
    for list in &mut g.starting {
        list.sort_by_key(|&id| (g.end[id], g.members[id][0]));
    }
    g
}

/// `(chosen so far, chosen counts bucketed by the last approver)`.
type CountState = (usize, Vec<(usize, usize)>);

/// Tracks how many chosen candidates each remaining approver interval end
/// carries. Cost grows as `(k+1)^d` with `d` the largest candidate degree.
pub fn pav_vi_bounded_d(
    p: &ApprovalProfile,
    order: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    ordered_votes(p, order)?;
    let kk = k.min(p.approved_candidates().len());
    let u = Utilities::new(scheme, kk);
    let groups = approver_groups(p, order);

    let mut trace: Trace<Option<(usize, usize)>> = Trace::new();
    let mut layer: Layer<CountState, Option<(usize, usize)>> = Layer::new();
    layer.relax((0, Vec::new()), BigInt::from(0), (0, None));
    for i in 0..order.len() {
        for &g in &groups.starting[i] {
            let mut next = Layer::new();
            let e = groups.end[g];
            for idx in 0..layer.len() {
                let (l, buckets) = &layer.keys[idx];
                for x in 0..=groups.members[g].len().min(kk - l) {
                    let mut b = buckets.clone();
                    if x > 0 {
                        match b.binary_search_by_key(&e, |&(end, _)| end) {
                            Ok(pos) => b[pos].1 += x,
                            Err(pos) => b.insert(pos, (e, x)),
                        }
                    }
                    next.relax((l + x, b), layer.vals[idx].clone(), (idx, Some((g, x))));
                }
            }
            trace.push(std::mem::replace(&mut layer, next));
        }
        let mut next = Layer::new();
        for idx in 0..layer.len() {
            let (l, buckets) = &layer.keys[idx];
            let here: usize = buckets.iter().map(|&(_, c)| c).sum();
            let rest: Vec<(usize, usize)> =
                buckets.iter().copied().filter(|&(e, _)| e != i).collect();
            next.relax((*l, rest), &layer.vals[idx] + &u.u[here], (idx, None));
        }
        trace.push(std::mem::replace(&mut layer, next));
    }
    let best = layer
        .best_where(|(l, _)| *l == kk)
        .expect("choosing every approved candidate is feasible");
    let total = layer.vals[best].clone();
    trace.push(layer);
    let chosen: Vec<usize> = trace
        .walk(best)
        .into_iter()
        .skip(1)
        .flatten()
        .flat_map(|(g, x)| groups.members[g][..x].to_vec())
        .collect();
    Ok(Solution::new(
        u.score(total),
        pad(chosen, k, p.m()),
        Algorithm::PavViBoundedD,
    ))
}

/// Weights vanishing after the cutoff `i0`: the state keeps only the `i0`
/// chosen members of the current vote whose approvers extend furthest.
pub(crate) fn wpav_truncated_vi(
    p: &ApprovalProfile,
    order: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    let i0 = scheme.cutoff().ok_or(Error::NotTruncated)?;
    let votes = ordered_votes(p, order)?;
    let kk = k.min(p.approved_candidates().len());
    let u = Utilities::new(scheme, kk);
    let mut last = vec![0usize; p.m()];
    for (pos, v) in votes.iter().enumerate() {
        for &c in v {
            last[c] = pos;
        }
    }
    let rank = |c: &usize| (Reverse(last[*c]), *c);

    let mut trace: Trace<usize> = Trace::new();
    let mut layer: Layer<(usize, Vec<usize>), usize> = Layer::new();
    layer.relax((0, Vec::new()), BigInt::from(0), (0, 0));
    let mut fresh_lists = Vec::with_capacity(votes.len());
    for (i, cur) in votes.iter().enumerate() {
        let mut new = fresh(i.checked_sub(1).map(|j| &votes[j]), cur);
        new.sort_by_key(rank);
        let mut next = Layer::new();
        for idx in 0..layer.len() {
            let (l, top) = &layer.keys[idx];
            let kept: Vec<usize> = top
                .iter()
                .copied()
                .filter(|c| cur.binary_search(c).is_ok())
                .collect();
            for q in 0..=new.len().min(kk - l) {
                let mut merged: Vec<usize> = kept.iter().chain(&new[..q]).copied().collect();
                merged.sort_by_key(rank);
                merged.truncate(i0);
                let gain = &u.u[(kept.len() + q).min(i0)];
                next.relax((l + q, merged), &layer.vals[idx] + gain, (idx, q));
            }
        }
        trace.push(std::mem::replace(&mut layer, next));
        fresh_lists.push(new);
    }
    let best = layer
        .best_where(|(l, _)| *l == kk)
        .expect("choosing every approved candidate is feasible");
    let total = layer.vals[best].clone();
    trace.push(layer);
    let chosen: Vec<usize> = trace
        .walk(best)
        .into_iter()
        .skip(1)
        .zip(&fresh_lists)
        .flat_map(|(q, new)| new[..q].to_vec())
        .collect();
    Ok(Solution::new(
        u.score(total),
        pad(chosen, k, p.m()),
        Algorithm::WpavTruncatedVi,
    ))
}
