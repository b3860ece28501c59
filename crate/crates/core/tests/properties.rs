mod common;

use proptest::prelude::*;
use rider_types::MoveSet;

fn moveset() -> impl Strategy<Value = MoveSet> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 1..=5)
        .prop_filter_map("distinct slopes", |pairs| MoveSet::from_pairs(&pairs).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn steiner_matches_slab(lines in prop::collection::vec(((-6i64..=6, -6i64..=6), (-3i64..=3, -3i64..=3)), 0..9)) {
        common::steiner_vs_slab(&lines).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn antipodal_invariant(ms in moveset(), pts in prop::collection::vec((-20i64..=20, -20i64..=20), 2..=5)) {
        common::antipodal(&ms, &pts).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn last_level_matches_scan(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
        lines in prop::collection::vec((-20i64..20, -20i64..20, -20i64..20), 0..12),
    ) {
        common::last_level_vs_scan(p, &lines).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn torus_matches_enumeration(
        ms in moveset(),
        q in 1usize..=3,
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
    ) {
        prop_assume!(q < 3 || p <= 7);
        common::torus_vs_naive(&ms, q, p).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn reorientation_is_a_census_bijection(ms in moveset(), q in 2usize..=3) {
        common::reorientation(&ms, q).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn torus_oracle_at_the_edges() {
    for name in ["queen", "trident", "semiqueen", "nightrider"] {
        let ms = MoveSet::named(name).unwrap();
        for p in [2, 3, 5, 7, 11] {
            for q in 1..=2 {
                common::torus_vs_naive(&ms, q, p).unwrap();
            }
        }
        common::torus_vs_naive(&ms, 3, 7).unwrap();
    }
    common::torus_vs_naive(&MoveSet::named("queen").unwrap(), 3, 11).unwrap();
}

#[test]
fn square_counts_match_subset_enumeration() {
    for name in ["queen", "nightrider", "semiqueen"] {
        let ms = MoveSet::named(name).unwrap();
        let board = rider_types::boards::Board::square();
        for q in 1..=3 {
            for n in 1..=6 {
                let c = rider_types::census::count_nonattacking(&ms, &board, n, q).unwrap();
                assert_eq!(
                    c.unlabelled,
                    common::naive_square_count(&ms, n as i64, q) as u128,
                    "{name} q={q} n={n}"
                );
            }
        }
    }
}
