use dichotomous::detection::{
    detect, embed_from_witness, enumerate_witness_orders, is_de_embedding, verify_witness,
    wsc_characterize, MiddleKind, Radii, StructureProperty as S, Verdict, Witness,
};
use dichotomous::generate::{generate, GenSpec, Structure};
use dichotomous::profile::rational;
use dichotomous::{ApprovalProfile, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prof(labels: &[&str], votes: &[&[&str]]) -> ApprovalProfile {
    ApprovalProfile::build(labels, votes.iter().map(|v| v.iter().copied())).unwrap()
}

const ABC: &[&str] = &["a", "b", "c"];
const ABCD: &[&str] = &["a", "b", "c", "d"];

fn verdict(p: &ApprovalProfile, prop: S) -> bool {
    let r = detect(p, prop).unwrap();
    assert_ne!(r.verdict, Verdict::Unknown);
    if r.holds() {
        assert!(verify_witness(p, prop, &r.witness).unwrap());
    }
    r.holds()
}

#[test]
fn golden_table() {
    let rows: Vec<(ApprovalProfile, Vec<(S, bool)>)> = vec![
        (
            prof(ABC, &[&["a", "b", "c"], &["a"], &["b"], &["c"]]),
            vec![(S::Ci, true), (S::Vi, false)],
        ),
        (
            prof(ABCD, &[&["a", "b"], &["a", "c"], &["a", "d"]]),
            vec![(S::Vi, true), (S::Ci, false)],
        ),
        (
            prof(ABCD, &[&["a", "b"], &["a", "d"], &["c", "d"]]),
            vec![(S::Vei, true), (S::Cei, false)],
        ),
        (
            prof(ABC, &[&["a", "b"], &["a"], &["c"], &["b", "c"]]),
            vec![(S::Cei, true), (S::Vei, false)],
        ),
        (
            prof(ABC, &[&["a"], &["b"], &["c"]]),
            vec![
                (S::Part, true),
                (S::Vei, false),
                (S::Cei, false),
                (S::Wsc, false),
            ],
        ),
        (
            prof(ABC, &[&["a", "b"], &[], &["b", "c"]]),
            vec![(S::Wsc, true), (S::Vei, false)],
        ),
        (
            prof(ABCD, &[&["a", "b"], &["b", "c"]]),
            vec![(S::Wsc, true), (S::Cei, false)],
        ),
        (
            prof(ABC, &[&["a", "b"], &["b"], &["b", "c"]]),
            vec![(S::Wsc, true), (S::Cei, false)],
        ),
        (
            prof(ABCD, &[&["a", "b", "c"], &["b", "c", "d"], &["b"], &["c"]]),
            vec![(S::Vi, true), (S::Ci, true)],
        ),
        (
            prof(ABC, &[&["a", "b"], &["a", "c"], &["b", "c"]]),
            vec![
                (S::Ssc, true),
                (S::Ci, false),
                (S::Psp, false),
                (S::Pe, false),
            ],
        ),
    ];
    for (p, checks) in &rows {
        for &(prop, want) in checks {
            assert_eq!(verdict(p, prop), want, "{prop} on {:?}", p.votes());
        }
    }
    let p = &rows[0].0;
    assert_eq!(
        detect(p, S::Ci).unwrap().witness,
        Witness::CandidateOrder(vec![0, 1, 2])
    );
}

#[test]
fn verify_examples() {
    let p = prof(ABCD, &[&["a", "b"], &["a", "d"], &["c", "d"]]);
    assert!(verify_witness(&p, S::Vei, &Witness::VoterOrder(vec![0, 1, 2])).unwrap());
    let gap = prof(ABC, &[&["a"], &["b"], &["a"]]);
    assert!(!verify_witness(&gap, S::Vi, &Witness::VoterOrder(vec![0, 1, 2])).unwrap());
}

#[test]
fn wsc_examples() {
    let p = prof(ABC, &[&["a"], &["b"], &["c"]]);
    assert!(wsc_characterize(&p).is_none());
    let p = prof(ABC, &[&["a", "b"], &["a", "b"]]);
    let t = wsc_characterize(&p).unwrap();
    assert_eq!(
        (t.u.to_vec(), t.w.to_vec(), t.middle),
        (vec![0, 1], vec![0, 1], MiddleKind::Absent)
    );
}

fn q(x: i64, y: i64) -> Rational {
    rational(x, y)
}

#[test]
fn embedding_examples() {
    let p = prof(ABC, &[&["a", "b"], &["c"]]);
    let e = embed_from_witness(&p, S::Cei, &Witness::CandidateOrder(vec![0, 1, 2])).unwrap();
    assert_eq!(e.candidate_pos, vec![q(1, 1), q(2, 1), q(3, 1)]);
    assert_eq!(e.radii, Radii::Uniform(q(3, 1)));
    assert!(verify_witness(&p, S::Due, &Witness::Embedding(e)).unwrap());

    let p = prof(ABC, &[&["a", "b"], &["b", "c"]]);
    let e = embed_from_witness(&p, S::Ci, &Witness::CandidateOrder(vec![0, 1, 2])).unwrap();
    assert_eq!(e.candidate_pos, vec![q(1, 1), q(2, 1), q(3, 1)]);
    assert_eq!(e.voter_pos, vec![q(3, 2), q(5, 2)]);
    assert_eq!(e.radii, Radii::PerVoter(vec![q(1, 2), q(1, 2)]));
    assert!(is_de_embedding(&p, &e));

    let p = prof(ABC, &[&["a", "b"], &["b"], &["b", "c"]]);
    let r = detect(&p, S::Wsc).unwrap();
    let e = embed_from_witness(&p, S::Wsc, &r.witness).unwrap();
    assert_eq!(e.candidate_pos, vec![q(1, 1), q(2, 1), q(3, 1)]);
    assert!(verify_witness(&p, S::Due, &Witness::Embedding(e)).unwrap());
}

#[test]
fn enumeration_examples() {
    let p = prof(&["a", "b"], &[&[], &["a"], &["b"]]);
    assert_eq!(enumerate_witness_orders(&p, S::Ci, 8).unwrap().len(), 2);
    assert!(enumerate_witness_orders(&p, S::Vi, 8).unwrap().len() > 2);
    let p = prof(ABC, &[&["a"], &["b"], &["c"]]);
    assert_eq!(enumerate_witness_orders(&p, S::Ci, 8).unwrap().len(), 6);
}

/// Exact feasibility of placing voters for fixed candidate positions and
/// radius: each voter needs a point within `r` of its approved candidates
/// and farther than `r` from the rest.
fn voters_placeable(p: &ApprovalProfile, pos: &[Rational], r: &Rational) -> bool {
    p.votes().iter().all(|v| {
        let mut lo = None::<Rational>;
        let mut hi = None::<Rational>;
        for c in v.iter() {
            let (a, b) = (&pos[c] - r, &pos[c] + r);
            lo = Some(lo.map_or(a.clone(), |x| x.max(a)));
            hi = Some(hi.map_or(b.clone(), |x| x.min(b)));
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return true;
        };
        if lo > hi {
            return false;
        }
        // Points of [lo, hi] outside every closed ball of a disapproved one.
        let mut blocked: Vec<(Rational, Rational)> = v
            .complement()
            .iter()
            .map(|c| (&pos[c] - r, &pos[c] + r))
            .collect();
        blocked.sort();
        let mut cursor = lo.clone();
        let mut open_left = false;
        for (a, b) in blocked {
            if cursor > hi {
                return false;
            }
            if b < cursor {
                continue;
            }
            if a > cursor {
                return cursor < hi || !open_left;
            }
            cursor = b;
            open_left = true;
        }
        cursor < hi || (cursor == hi && !open_left)
    })
}

#[test]
fn vi_and_ci_but_not_due() {
    let p = prof(ABCD, &[&["a", "b", "c"], &["b", "c", "d"], &["b"], &["c"]]);
    assert!(verdict(&p, S::Vi) && verdict(&p, S::Ci));
    assert_eq!(
        enumerate_witness_orders(&p, S::Ci, 8).unwrap(),
        vec![
            vec![0, 1, 2, 3],
            vec![0, 2, 1, 3],
            vec![3, 1, 2, 0],
            vec![3, 2, 1, 0]
        ]
    );
    // Scale invariance lets the radius stay fixed; no grid placement works.
    let r = q(2, 1);
    for pa in 0..=16 {
        for pb in 0..=16 {
            for pc in 0..=16 {
                for pd in 0..=16 {
                    let pos = [q(pa, 2), q(pb, 2), q(pc, 2), q(pd, 2)];
                    assert!(!voters_placeable(&p, &pos, &r), "{pos:?}");
                }
            }
        }
    }
    let grid_ok = voters_placeable(
        &prof(ABC, &[&["a", "b"], &["b", "c"]]),
        &[q(0, 1), q(2, 1), q(4, 1)],
        &q(3, 2),
    );
    assert!(grid_ok);
}

fn distinct<T: Eq + std::hash::Hash>(xs: impl IntoIterator<Item = T>) -> bool {
    let mut seen = std::collections::HashSet::new();
    xs.into_iter().all(|x| seen.insert(x))
}

#[test]
fn extremal_orders_are_unique() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut vei_done, mut cei_done, mut seed) = (0, 0, 0u64);
    while vei_done < 200 || cei_done < 200 {
        seed += 1;
        let (n, m) = (rng.gen_range(2..=7), rng.gen_range(2..=7));
        if vei_done < 200 {
            let p = generate(&GenSpec::new(Structure::Property(S::Vei), n, m, seed)).unwrap();
            if distinct(p.votes()) {
                let orders = enumerate_witness_orders(&p, S::Vei, 8).unwrap();
                let o = &orders[0];
                let rev: Vec<usize> = o.iter().rev().copied().collect();
                assert_eq!(orders, vec![o.clone(), rev], "{:?}", p.votes());
                vei_done += 1;
            }
        }
        if cei_done < 200 {
            let p = generate(&GenSpec::new(Structure::Property(S::Cei), n, m, seed)).unwrap();
            if distinct((0..p.m()).map(|c| p.approvers(c))) {
                let orders = enumerate_witness_orders(&p, S::Cei, 8).unwrap();
                let o = &orders[0];
                let rev: Vec<usize> = o.iter().rev().copied().collect();
                assert_eq!(orders, vec![o.clone(), rev], "{:?}", p.votes());
                cei_done += 1;
            }
        }
    }
}

#[test]
fn detection_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..400 {
        let (n, m) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let st = [S::Vi, S::Ci, S::Vei, S::Cei][seed % 4];
        // Mix structured and unrestricted instances.
        let structure = if rng.gen_bool(0.5) {
            Structure::Property(st)
        } else {
            Structure::Unrestricted
        };
        let p = generate(&GenSpec::new(structure, n, m, seed as u64)).unwrap();
        for prop in [S::Vi, S::Ci, S::Vei, S::Cei] {
            let brute = !enumerate_witness_orders(&p, prop, 8).unwrap().is_empty();
            assert_eq!(verdict(&p, prop), brute, "{prop} {:?}", p.votes());
        }
    }
}
