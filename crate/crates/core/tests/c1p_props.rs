use dichotomous::c1p::{c1p_column_order, verify_c1p, BinaryMatrix};
use proptest::prelude::*;

fn heap_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    out.push(a.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i)
            } else {
                a.swap(c[i], i)
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn matrix() -> impl Strategy<Value = BinaryMatrix> {
    (1usize..=8, 0usize..=7).prop_flat_map(|(cols, nrows)| {
        prop::collection::vec(prop::collection::vec(any::<bool>(), cols), nrows).prop_map(
            move |rows| {
                let rows: Vec<Vec<usize>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(_, b)| **b)
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect();
                BinaryMatrix::from_rows(cols, &rows)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn sound_and_complete_against_exhaustive_search(m in matrix()) {
        let found = c1p_column_order(&m);
        if let Some(p) = &found {
            prop_assert!(verify_c1p(&m, p).unwrap());
        }
        let exhaustive = heap_perms(m.cols()).iter().any(|p| verify_c1p(&m, p).unwrap());
        prop_assert_eq!(found.is_some(), exhaustive);
    }

    #[test]
    fn decision_ignores_row_order(m in matrix(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.rows()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = BinaryMatrix::from_sets(m.cols(), order.iter().map(|&r| m.row(r).clone()).collect());
        prop_assert_eq!(c1p_column_order(&m).is_some(), c1p_column_order(&shuffled).is_some());
    }

    #[test]
    fn deterministic(m in matrix()) {
        prop_assert_eq!(c1p_column_order(&m), c1p_column_order(&m.clone()));
    }
}

// Mostly-C1P matrices: intervals on a hidden column order, optionally with one
// flipped bit, so both verdicts and deep nestings are exercised.
fn interval_matrix() -> impl Strategy<Value = BinaryMatrix> {
    (2usize..=8, 1usize..=8).prop_flat_map(|(cols, nrows)| {
        (
            Just(cols),
            Just(heap_perms(cols)).prop_flat_map(prop::sample::select),
            prop::collection::vec((0..cols, 0..cols), nrows),
            prop::option::of((0..nrows, 0..cols)),
        )
            .prop_map(|(cols, perm, spans, flip)| {
                let mut rows: Vec<Vec<usize>> = spans
                    .iter()
                    .map(|&(a, b)| (a.min(b)..=a.max(b)).map(|p| perm[p]).collect())
                    .collect();
                if let Some((r, c)) = flip {
                    if let Some(i) = rows[r].iter().position(|&x| x == c) {
                        rows[r].remove(i);
                    } else {
                        rows[r].push(c);
                    }
                }
                BinaryMatrix::from_rows(cols, &rows)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn interval_matrices_match_exhaustive_search(m in interval_matrix()) {
        let found = c1p_column_order(&m);
        if let Some(p) = &found {
            prop_assert!(verify_c1p(&m, p).unwrap());
        }
        let exhaustive = heap_perms(m.cols()).iter().any(|p| verify_c1p(&m, p).unwrap());
        prop_assert_eq!(found.is_some(), exhaustive);
    }
}
