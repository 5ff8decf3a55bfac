//! Containment relations between the domains, checked on generated profiles.

use dichotomous::detection::{
    detect, embed_from_witness, is_cei_axis, is_due_embedding, is_ssc_order, is_vei_order,
    verify_witness, wsc_characterize, StructureProperty as S, Witness,
};
use dichotomous::generate::{generate, GenSpec, Structure};
use dichotomous::ApprovalProfile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRIALS: u64 = 1000;

fn instances(structure: S) -> impl Iterator<Item = ApprovalProfile> {
    let mut rng = ChaCha8Rng::seed_from_u64(structure as u64);
    (0..TRIALS).map(move |seed| {
        let lo = if structure == S::TwoPart { 2 } else { 1 };
        let (n, m) = (rng.gen_range(lo..=12), rng.gen_range(lo..=12));
        generate(&GenSpec::new(Structure::Property(structure), n, m, seed)).unwrap()
    })
}

fn holds(p: &ApprovalProfile, prop: S) -> bool {
    let r = detect(p, prop).unwrap();
    if r.holds() {
        assert!(verify_witness(p, prop, &r.witness).unwrap());
    }
    r.holds()
}

fn due_via(p: &ApprovalProfile, prop: S) {
    let r = detect(p, prop).unwrap();
    assert!(r.holds(), "{prop} {:?}", p.votes());
    let e = embed_from_witness(p, prop, &r.witness).unwrap();
    assert!(is_due_embedding(p, &e), "{prop} {:?}", p.votes());
}

#[test]
fn generators_are_sound() {
    for s in [S::TwoPart, S::Part, S::Vei, S::Vi, S::Cei, S::Ci, S::Wsc] {
        for p in instances(s) {
            assert!(holds(&p, s), "{s}: {:?}", p.votes());
        }
    }
}

#[test]
fn two_part_is_in_every_extremal_domain() {
    for p in instances(S::TwoPart) {
        for prop in [S::Vei, S::Cei, S::Wsc, S::Part] {
            assert!(holds(&p, prop), "{prop}: {:?}", p.votes());
        }
    }
}

#[test]
fn uniform_embeddings() {
    for s in [S::Part, S::Vei, S::Cei, S::Wsc] {
        for p in instances(s) {
            due_via(&p, s);
        }
    }
}

#[test]
fn due_is_vi_and_ci() {
    for p in instances(S::Due) {
        assert!(holds(&p, S::Vi) && holds(&p, S::Ci), "{:?}", p.votes());
    }
}

#[test]
fn vi_orders_are_ssc_orders() {
    for p in instances(S::Vi) {
        let Witness::VoterOrder(o) = detect(&p, S::Vi).unwrap().witness else {
            panic!()
        };
        assert!(is_ssc_order(&p, &o));
    }
}

#[test]
fn aliases_agree_with_ci() {
    for s in [S::Ci, S::Vi, S::Wsc] {
        for p in instances(s) {
            let ci = detect(&p, S::Ci).unwrap();
            for alias in [S::Psp, S::Pe, S::De] {
                let r = detect(&p, alias).unwrap();
                assert_eq!(r.verdict, ci.verdict);
                assert_eq!(r.witness, ci.witness);
            }
        }
    }
}

#[test]
fn wsc_without_empty_votes_is_vei() {
    for p in instances(S::Wsc) {
        if p.votes().iter().any(|v| v.is_empty()) {
            continue;
        }
        let t = wsc_characterize(&p).unwrap();
        assert!(is_vei_order(&p, &t.voter_order), "{:?}", p.votes());
    }
}

#[test]
fn wsc_with_contested_candidates_is_cei() {
    for p in instances(S::Wsc) {
        let contested = (0..p.m()).all(|c| {
            let a = p.approvers(c).len();
            a > 0 && a < p.n()
        });
        if contested {
            assert!(holds(&p, S::Cei), "{:?}", p.votes());
        }
    }
}

/// `WSC ∧ VEI ∧ CEI` implies 2PART once degenerate profiles are excluded:
/// no trivial vote and every candidate both approved and disapproved.
#[test]
fn extremal_intersection_is_two_part_when_non_degenerate() {
    for s in [S::TwoPart, S::Part, S::Vei, S::Cei, S::Wsc, S::Vi, S::Ci] {
        for p in instances(s) {
            let degenerate = (0..p.n()).any(|i| p.is_trivial_vote(i))
                || (0..p.m()).any(|c| {
                    let a = p.approvers(c).len();
                    a == 0 || a == p.n()
                });
            let all = holds(&p, S::Wsc) && holds(&p, S::Vei) && holds(&p, S::Cei);
            if !degenerate {
                assert_eq!(all, holds(&p, S::TwoPart), "{:?}", p.votes());
            }
        }
    }
}

#[test]
fn degenerate_counterexamples() {
    let build = |m: usize, votes: &[&[usize]]| {
        let votes: Vec<Vec<usize>> = votes.iter().map(|v| v.to_vec()).collect();
        ApprovalProfile::from_index_votes(m, &votes).unwrap()
    };
    // In WSC, VEI and CEI, yet not 2PART.
    for p in [
        build(2, &[&[0], &[], &[1]]),
        build(2, &[&[0]]),
        build(2, &[&[], &[0]]),
    ] {
        assert!(holds(&p, S::Wsc) && holds(&p, S::Vei) && holds(&p, S::Cei));
        assert!(!holds(&p, S::TwoPart));
    }
    // WSC with no empty vote, yet not VEI: the full vote sits between
    // disjoint extremes that leave a candidate out.
    let p = build(3, &[&[0], &[0, 1, 2], &[2]]);
    assert!(holds(&p, S::Wsc) && !holds(&p, S::Vei));
    let t = wsc_characterize(&p).unwrap();
    assert!(!is_vei_order(&p, &t.voter_order));
    assert!(is_cei_axis(&p, &[0, 1, 2]));
    due_via(&p, S::Wsc);
}
