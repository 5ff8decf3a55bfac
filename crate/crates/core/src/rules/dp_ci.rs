//! Dynamic programs along a CI candidate axis.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::layer::{Layer, Trace};
use super::{check_k, Algorithm, Solution, Utilities};
use crate::detection::is_ci_axis;
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, Committee, WeightScheme};

/// Largest window the sliding-window program accepts.
const MAX_S: usize = 24;

/// Non-empty votes as axis intervals `[b, e]`, 0-based and inclusive.
fn intervals(p: &ApprovalProfile, axis: &[usize]) -> Result<Vec<(usize, usize)>> {
    if !is_ci_axis(p, axis) {
        return Err(Error::InvalidWitness("CI".into()));
    }
    let mut pos = vec![0; p.m()];
    for (j, &c) in axis.iter().enumerate() {
        pos[c] = j;
    }
    Ok(p.votes()
        .iter()
        .filter(|v| !v.is_empty())
        .map(|v| {
            let b = v.iter().map(|c| pos[c]).min().unwrap();
            (b, b + v.len() - 1)
        })
        .collect())
}

fn committee_from_positions(axis: &[usize], picks: impl IntoIterator<Item = usize>) -> Committee {
    let mut members: Vec<usize> = picks.into_iter().map(|j| axis[j]).collect();
    members.sort_unstable();
    Committee::from_sorted_unchecked(members)
}

/// Slides a window of `s` axis positions, `s` the largest vote size; a vote
/// is scored when the window reaches its right end.
pub fn pav_ci_bounded_s(
    p: &ApprovalProfile,
    axis: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    let ivs = intervals(p, axis)?;
    let m = p.m();
    let s = ivs.iter().map(|&(b, e)| e - b + 1).max().unwrap_or(1);
    if s > MAX_S {
        return Err(Error::OverLimit {
            size: s,
            limit: MAX_S,
        });
    }
    let u = Utilities::new(scheme, k);
    // Per right end, vote counts by length.
    let mut ending: Vec<HashMap<usize, usize>> = vec![HashMap::new(); m];
    for &(b, e) in &ivs {
        *ending[e].entry(e - b + 1).or_insert(0) += 1;
    }
    let ending: Vec<Vec<(u32, BigInt)>> = ending
        .into_iter()
        .map(|h| {
            let mut v: Vec<(u32, BigInt)> = h
                .into_iter()
                .map(|(len, c)| (((1u64 << len) - 1) as u32, BigInt::from(c)))
                .collect();
            v.sort();
            v
        })
        .collect();
    let full = ((1u64 << s) - 1) as u32;
    let size = 1usize << s;
    let width = k + 1;

    // Bit t of a mask is position j - t.
    let mut vals: Vec<Option<BigInt>> = vec![None; size * width];
    vals[0] = Some(BigInt::from(0));
    let mut backs: Vec<Vec<u32>> = Vec::with_capacity(m);
    for end in ending.iter() {
        let mut next: Vec<Option<BigInt>> = vec![None; size * width];
        let mut back = vec![0u32; size * width];
        for mask in 0..size {
            for l in 0..width {
                let Some(v) = &vals[mask * width + l] else {
                    continue;
                };
                for x in 0..=1u32 {
                    let nl = l + x as usize;
                    if nl > k {
                        continue;
                    }
                    let nm = ((mask as u32) << 1 | x) & full;
                    let mut cand = v.clone();
                    for (low, c) in end {
                        cand += c * &u.u[(nm & low).count_ones() as usize];
                    }
                    let slot = nm as usize * width + nl;
                    if next[slot].as_ref().is_none_or(|y| cand > *y) {
                        next[slot] = Some(cand);
                        back[slot] = mask as u32;
                    }
                }
            }
        }
        backs.push(back);
        vals = next;
    }
    let (best_mask, best) = (0..size)
        .filter_map(|a| vals[a * width + k].as_ref().map(|v| (a, v)))
        .fold(None::<(usize, &BigInt)>, |acc, (a, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((a, v)),
        })
        .expect("k <= m committees exist");
    let total = best.clone();
    let mut picks = Vec::with_capacity(k);
    let (mut mask, mut l) = (best_mask, k);
    for j in (0..m).rev() {
        let prev = backs[j][mask * width + l];
        if mask & 1 == 1 {
            picks.push(j);
            l -= 1;
        }
        mask = prev as usize;
    }
    Ok(Solution::new(
        u.score(total),
        committee_from_positions(axis, picks),
        Algorithm::PavCiBoundedS,
    ))
}

/// Tracks the chosen count inside every vote interval still open. Cost
/// grows as `(k+1)^d` with `d` the largest candidate degree.
pub fn pav_ci_bounded_d(
    p: &ApprovalProfile,
    axis: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    let ivs = intervals(p, axis)?;
    let m = p.m();
    let u = Utilities::new(scheme, k);
    // Distinct intervals with multiplicities.
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut distinct: Vec<((usize, usize), BigInt)> = Vec::new();
    for &iv in &ivs {
        let id = *ids.entry(iv).or_insert_with(|| {
            distinct.push((iv, BigInt::from(0)));
            distinct.len() - 1
        });
        distinct[id].1 += 1;
    }
    let mut starting = vec![Vec::new(); m];
    for (id, &((b, _), _)) in distinct.iter().enumerate() {
        starting[b].push(id);
    }

    let mut trace: Trace<bool> = Trace::new();
    let mut layer: Layer<(usize, Vec<usize>), bool> = Layer::new();
    layer.relax((0, Vec::new()), BigInt::from(0), (0, false));
    // Open intervals, aligned with the count vectors of the current layer.
    let mut open: Vec<usize> = Vec::new();
    for (j, starts) in starting.iter().enumerate() {
        let mut active = open.clone();
        active.extend(starts);
        let survivors: Vec<bool> = active.iter().map(|&id| distinct[id].0 .1 > j).collect();
        let mut next = Layer::new();
        for idx in 0..layer.len() {
            let (l, counts) = &layer.keys[idx];
            for x in 0..=usize::from(*l < k) {
                let mut val = layer.vals[idx].clone();
                let mut rest = Vec::with_capacity(active.len());
                for (t, &id) in active.iter().enumerate() {
                    let c = counts.get(t).copied().unwrap_or(0) + x;
                    if survivors[t] {
                        rest.push(c);
                    } else {
                        val += &distinct[id].1 * &u.u[c];
                    }
                }
                next.relax((l + x, rest), val, (idx, x == 1));
            }
        }
        trace.push(std::mem::replace(&mut layer, next));
        open = active
            .into_iter()
            .zip(survivors)
            .filter(|&(_, s)| s)
            .map(|(id, _)| id)
            .collect();
    }
    let best = layer
        .best_where(|(l, _)| *l == k)
        .expect("k <= m committees exist");
    let total = layer.vals[best].clone();
    trace.push(layer);
    let picks = trace
        .walk(best)
        .into_iter()
        .skip(1)
        .enumerate()
        .filter(|&(_, x)| x)
        .map(|(j, _)| j);
    Ok(Solution::new(
        u.score(total),
        committee_from_positions(axis, picks),
        Algorithm::PavCiBoundedD,
    ))
}

/// Weights vanishing after the cutoff `i0`: the state keeps the last `i0`
/// chosen positions that some unfinished vote can still contain.
pub(crate) fn wpav_truncated_ci(
    p: &ApprovalProfile,
    axis: &[usize],
    k: usize,
    scheme: &WeightScheme,
) -> Result<Solution> {
    check_k(p, k)?;
    let i0 = scheme.cutoff().ok_or(Error::NotTruncated)?;
    let ivs = intervals(p, axis)?;
    let m = p.m();
    let u = Utilities::new(scheme, k);
    let mut ending: Vec<HashMap<usize, usize>> = vec![HashMap::new(); m];
    for &(b, e) in &ivs {
        *ending[e].entry(b).or_insert(0) += 1;
    }
    let ending: Vec<Vec<(usize, BigInt)>> = ending
        .into_iter()
        .map(|h| {
            let mut v: Vec<(usize, BigInt)> =
                h.into_iter().map(|(b, c)| (b, BigInt::from(c))).collect();
            v.sort();
            v
        })
        .collect();
    // Smallest left end among votes ending after position j.
    let mut floor = vec![usize::MAX; m];
    for &(b, e) in &ivs {
        for f in floor.iter_mut().take(e) {
            *f = (*f).min(b);
        }
    }

    let mut trace: Trace<bool> = Trace::new();
    let mut layer: Layer<(usize, Vec<usize>), bool> = Layer::new();
    layer.relax((0, Vec::new()), BigInt::from(0), (0, false));
    for j in 0..m {
        let mut next = Layer::new();
        for idx in 0..layer.len() {
            let (l, recent) = &layer.keys[idx];
            for x in 0..=usize::from(*l < k) {
                let mut a = recent.clone();
                if x == 1 {
                    a.push(j);
                    if a.len() > i0 {
                        a.remove(0);
                    }
                }
                let mut val = layer.vals[idx].clone();
                for (b, c) in &ending[j] {
                    let inside = a.iter().filter(|&&q| q >= *b).count();
                    val += c * &u.u[inside.min(i0)];
                }
                a.retain(|&q| q >= floor[j]);
                next.relax((l + x, a), val, (idx, x == 1));
            }
        }
        trace.push(std::mem::replace(&mut layer, next));
    }
    let best = layer
        .best_where(|(l, _)| *l == k)
        .expect("k <= m committees exist");
    let total = layer.vals[best].clone();
    trace.push(layer);
    let picks = trace
        .walk(best)
        .into_iter()
        .skip(1)
        .enumerate()
        .filter(|&(_, x)| x)
        .map(|(j, _)| j);
    Ok(Solution::new(
        u.score(total),
        committee_from_positions(axis, picks),
        Algorithm::WpavTruncatedCi,
    ))
}
