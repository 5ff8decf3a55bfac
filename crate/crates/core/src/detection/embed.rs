use num_bigint::BigInt;
use num_traits::One;

use super::{
    cei_axis, is_due_embedding, vei_order, verify_witness, wsc_characterize, EuclideanEmbedding,
    Radii, StructureProperty, Witness, WscTriple,
};
use crate::error::{Error, Result};
use crate::profile::{ApprovalProfile, CandidateSet, Rational};

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn half(x: i64) -> Rational {
    Rational::new(BigInt::from(x), BigInt::from(2))
}

/// Positions `1..=len` along `order`, and for each set whether it is a
/// prefix together with its size.
fn prefix_or_suffix(order: &[usize], sets: &[CandidateSet]) -> Vec<(bool, i64)> {
    let mut pos = vec![0usize; order.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    sets.iter()
        .map(|s| {
            let lo = s.iter().map(|x| pos[x]).min();
            (lo.is_none_or(|lo| lo == 0), s.len() as i64)
        })
        .collect()
}

/// Items at `1..=len` along `order`; sets become points at distance `len`
/// from exactly their members.
fn extremal_points(order: &[usize], sets: &[CandidateSet]) -> (Vec<Rational>, Vec<Rational>) {
    let len = order.len() as i64;
    let mut item_pos = vec![int(0); order.len()];
    for (i, &x) in order.iter().enumerate() {
        item_pos[x] = int(i as i64 + 1);
    }
    let set_pos = prefix_or_suffix(order, sets)
        .into_iter()
        .map(|(prefix, size)| {
            if prefix {
                int(size - len)
            } else {
                int(2 * len - size + 1)
            }
        })
        .collect();
    (item_pos, set_pos)
}

fn cei_embedding(p: &ApprovalProfile, axis: &[usize]) -> EuclideanEmbedding {
    let (candidate_pos, voter_pos) = extremal_points(axis, p.votes());
    EuclideanEmbedding {
        voter_pos,
        candidate_pos,
        radii: Radii::Uniform(int(p.m() as i64)),
    }
}

fn vei_embedding(p: &ApprovalProfile, order: &[usize]) -> EuclideanEmbedding {
    let approvers: Vec<CandidateSet> = (0..p.m()).map(|c| p.approvers(c)).collect();
    let (voter_pos, candidate_pos) = extremal_points(order, &approvers);
    EuclideanEmbedding {
        voter_pos,
        candidate_pos,
        radii: Radii::Uniform(int(p.n() as i64)),
    }
}

fn wsc_recipe(p: &ApprovalProfile, t: &WscTriple) -> Option<EuclideanEmbedding> {
    let mut candidate_pos = vec![int(10); p.m()];
    for (pos, block) in [(2, &t.blocks[0]), (1, &t.blocks[1]), (3, &t.blocks[2])] {
        for c in block.iter() {
            candidate_pos[c] = int(pos);
        }
    }
    let far = int(100);
    let narrow = [
        (t.u.clone(), half(3)),
        (t.w.clone(), half(5)),
        (t.blocks[0].clone(), int(2)),
    ];
    let wide = [
        (t.u.clone(), int(0)),
        (t.w.clone(), int(4)),
        (t.u.union(&t.w), int(2)),
    ];
    for (sets, radius) in [(narrow, half(1)), (wide, int(2))] {
        let voter_pos: Option<Vec<Rational>> = p
            .votes()
            .iter()
            .map(|v| {
                if v.is_empty() {
                    return Some(far.clone());
                }
                sets.iter().find(|(s, _)| s == v).map(|(_, x)| x.clone())
            })
            .collect();
        if let Some(voter_pos) = voter_pos {
            let e = EuclideanEmbedding {
                voter_pos,
                candidate_pos: candidate_pos.clone(),
                radii: Radii::Uniform(radius),
            };
            if is_due_embedding(p, &e) {
                return Some(e);
            }
        }
    }
    None
}

/// Embedding of the non-empty votes through a VEI order, with empty voters
/// placed out of reach.
fn vei_without_empty(p: &ApprovalProfile) -> Option<EuclideanEmbedding> {
    let keep: Vec<usize> = (0..p.n()).filter(|&i| !p.vote(i).is_empty()).collect();
    if keep.is_empty() {
        return None;
    }
    let sub = p.select_voters(&keep).ok()?;
    let order = vei_order(&sub)?;
    let e = vei_embedding(&sub, &order);
    let far = e
        .candidate_pos
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(|| int(0))
        + int(2 * p.n() as i64 + 1);
    let mut voter_pos = vec![far; p.n()];
    for (j, &i) in keep.iter().enumerate() {
        voter_pos[i] = e.voter_pos[j].clone();
    }
    Some(EuclideanEmbedding { voter_pos, ..e })
}

fn wsc_embedding(p: &ApprovalProfile, t: &WscTriple) -> Option<EuclideanEmbedding> {
    wsc_recipe(p, t)
        .or_else(|| cei_axis(p).map(|a| cei_embedding(p, &a)))
        .or_else(|| vei_order(p).map(|o| vei_embedding(p, &o)))
        .or_else(|| vei_without_empty(p))
}

fn part_embedding(p: &ApprovalProfile, parts: &[CandidateSet]) -> EuclideanEmbedding {
    let mut candidate_pos = vec![int(0); p.m()];
    for (j, part) in parts.iter().enumerate() {
        for c in part.iter() {
            candidate_pos[c] = int(3 * (j as i64 + 1));
        }
    }
    let voter_pos = p
        .votes()
        .iter()
        .map(|v| {
            let j = parts
                .iter()
                .position(|s| s == v)
                .expect("verified partition");
            int(3 * (j as i64 + 1))
        })
        .collect();
    EuclideanEmbedding {
        voter_pos,
        candidate_pos,
        radii: Radii::Uniform(Rational::one()),
    }
}

fn ci_embedding(p: &ApprovalProfile, axis: &[usize]) -> EuclideanEmbedding {
    let mut pos = vec![0i64; p.m()];
    let mut candidate_pos = vec![int(0); p.m()];
    for (i, &c) in axis.iter().enumerate() {
        pos[c] = i as i64 + 1;
        candidate_pos[c] = int(i as i64 + 1);
    }
    let (voter_pos, radii) = p
        .votes()
        .iter()
        .map(|v| {
            let lo = v.iter().map(|c| pos[c]).min();
            let hi = v.iter().map(|c| pos[c]).max();
            match (lo, hi) {
                (Some(lo), Some(hi)) => (half(lo + hi), half(hi - lo)),
                _ => (int(0), int(0)),
            }
        })
        .unzip();
    EuclideanEmbedding {
        voter_pos,
        candidate_pos,
        radii: Radii::PerVoter(radii),
    }
}

/// Builds a Euclidean embedding from a verified witness.
///
/// CEI, VEI, WSC and PART witnesses give a uniform-radius embedding; CI
/// witnesses give per-voter radii.
pub fn embed_from_witness(
    p: &ApprovalProfile,
    prop: StructureProperty,
    w: &Witness,
) -> Result<EuclideanEmbedding> {
    use StructureProperty as S;
    if !verify_witness(p, prop, w)? {
        return Err(Error::InvalidWitness(prop.name().to_string()));
    }
    match (prop, w) {
        (S::Cei, Witness::CandidateOrder(o)) => Ok(cei_embedding(p, o)),
        (S::Vei, Witness::VoterOrder(o)) => Ok(vei_embedding(p, o)),
        (S::Wsc, Witness::Wsc(t)) => wsc_embedding(p, t).ok_or(Error::NotInDomain("DUE".into())),
        (S::Wsc, Witness::VoterOrder(_)) => {
            let t = wsc_characterize(p).ok_or(Error::NotInDomain("WSC".into()))?;
            wsc_embedding(p, &t).ok_or(Error::NotInDomain("DUE".into()))
        }
        (S::Part | S::TwoPart, Witness::Partition(parts)) => Ok(part_embedding(p, parts)),
        (S::Ci | S::Psp | S::Pe | S::De, Witness::CandidateOrder(o)) => Ok(ci_embedding(p, o)),
        _ => Err(Error::Unsupported(format!(
            "embedding from a {} witness",
            prop.name()
        ))),
    }
}
