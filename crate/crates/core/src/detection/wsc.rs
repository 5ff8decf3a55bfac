use super::{canonical_orientation, MiddleKind, WscTriple};
use crate::profile::{weak_order_equal, ApprovalProfile, CandidateSet};

struct Class {
    rep: CandidateSet,
    voters: Vec<usize>,
}

/// Voters grouped by the weak order their vote induces, in order of first
/// appearance. All trivial votes share one class; its representative is the
/// full vote when one occurs.
fn weak_order_classes(p: &ApprovalProfile) -> Vec<Class> {
    let mut classes: Vec<Class> = Vec::new();
    for (i, v) in p.votes().iter().enumerate() {
        match classes
            .iter_mut()
            .find(|c| weak_order_equal(&c.rep, v, p.m()))
        {
            Some(c) => {
                if v.is_full() {
                    c.rep = v.clone();
                }
                c.voters.push(i);
            }
            None => classes.push(Class {
                rep: v.clone(),
                voters: vec![i],
            }),
        }
    }
    classes
}

fn orient(u: CandidateSet, w: CandidateSet, middle: MiddleKind, order: Vec<usize>) -> WscTriple {
    let canon = canonical_orientation(order.clone());
    if canon == order {
        WscTriple::new(u, w, middle, order)
    } else {
        WscTriple::new(w, u, middle, canon)
    }
}

/// Decides WSC: at most three distinct weak orders, and with three, one of
/// them equals the weak order of the intersection or the union of the other
/// two. Returns the triple with a voter order realizing it.
pub fn wsc_characterize(p: &ApprovalProfile) -> Option<WscTriple> {
    let classes = weak_order_classes(p);
    match classes.len() {
        1 => {
            let c = &classes[0];
            Some(WscTriple::new(
                c.rep.clone(),
                c.rep.clone(),
                MiddleKind::Absent,
                c.voters.clone(),
            ))
        }
        2 => {
            let order = [classes[0].voters.clone(), classes[1].voters.clone()].concat();
            Some(orient(
                classes[0].rep.clone(),
                classes[1].rep.clone(),
                MiddleKind::Absent,
                order,
            ))
        }
        3 => {
            let m = p.m();
            for mid in 0..3 {
                let (x, y) = match mid {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let (u, w, v) = (&classes[x].rep, &classes[y].rep, &classes[mid].rep);
                let inter = weak_order_equal(v, &u.intersection(w), m);
                let union = weak_order_equal(v, &u.union(w), m);
                // A full middle vote is only realized literally by the union.
                let kind = match (inter, union) {
                    (true, true) if v.is_full() => MiddleKind::Union,
                    (true, _) => MiddleKind::Intersection,
                    (false, true) => MiddleKind::Union,
                    (false, false) => continue,
                };
                let order = [
                    classes[x].voters.clone(),
                    classes[mid].voters.clone(),
                    classes[y].voters.clone(),
                ]
                .concat();
                return Some(orient(u.clone(), w.clone(), kind, order));
            }
            None
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::is_wsc_order;
    use super::*;

    fn p(m: usize, votes: &[&[usize]]) -> ApprovalProfile {
        let votes: Vec<Vec<usize>> = votes.iter().map(|v| v.to_vec()).collect();
        ApprovalProfile::from_index_votes(m, &votes).unwrap()
    }

    #[test]
    fn intersection_middle() {
        let q = p(3, &[&[0, 1], &[1], &[1, 2]]);
        let t = wsc_characterize(&q).unwrap();
        assert_eq!(t.u.to_vec(), vec![0, 1]);
        assert_eq!(t.w.to_vec(), vec![1, 2]);
        assert_eq!(t.middle, MiddleKind::Intersection);
        assert_eq!(t.voter_order, vec![0, 1, 2]);
        assert_eq!(t.blocks[0].to_vec(), vec![1]);
    }

    #[test]
    fn middle_found_in_any_position() {
        let q = p(3, &[&[1], &[0, 1], &[1, 2], &[1]]);
        let t = wsc_characterize(&q).unwrap();
        assert!(is_wsc_order(&q, &t.voter_order));
        assert_eq!(t.middle, MiddleKind::Intersection);
    }

    #[test]
    fn trivial_votes_count_as_a_class() {
        // Two non-trivial orders plus the trivial one, not related by ∩ or ∪.
        let q = p(4, &[&[0, 1], &[], &[1, 2]]);
        assert!(wsc_characterize(&q).is_none());
        let q = p(3, &[&[0, 1], &[], &[1, 2]]);
        let t = wsc_characterize(&q).unwrap();
        assert_eq!(t.middle, MiddleKind::Union);
        assert!(is_wsc_order(&q, &t.voter_order));
    }

    #[test]
    fn four_orders_fail() {
        let q = p(4, &[&[0], &[1], &[2], &[0, 1]]);
        assert!(wsc_characterize(&q).is_none());
    }

    #[test]
    fn exhaustive_agreement_small() {
        // All profiles of up to 4 votes over 3 candidates.
        let m = 3;
        let subsets: Vec<Vec<usize>> = (0..8u32)
            .map(|b| (0..m).filter(|i| b >> i & 1 == 1).collect())
            .collect();
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(idx) = stack.pop() {
            if idx.len() < 4 {
                for s in 0..8 {
                    let mut next = idx.clone();
                    next.push(s);
                    stack.push(next);
                }
            }
            if idx.is_empty() {
                continue;
            }
            let votes: Vec<Vec<usize>> = idx.iter().map(|&s| subsets[s].clone()).collect();
            let q = ApprovalProfile::from_index_votes(m, &votes).unwrap();
            let brute = permutations(q.n())
                .into_iter()
                .any(|o| is_wsc_order(&q, &o));
            let t = wsc_characterize(&q);
            assert_eq!(t.is_some(), brute, "{votes:?}");
            if let Some(t) = t {
                assert!(is_wsc_order(&q, &t.voter_order));
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in permutations(n - 1) {
            for i in 0..=rest.len() {
                let mut o = rest.clone();
                o.insert(i, n - 1);
                out.push(o);
            }
        }
        out
    }
}
