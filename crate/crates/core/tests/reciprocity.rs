use num_bigint::BigInt;
use rider_types::boards::Board;
use rider_types::census::count_nonattacking;
use rider_types::formulas::{find_period, fit_quasipoly, known_types, types_from_counts};
use rider_types::MoveSet;

fn labelled_counts(ms: &MoveSet, q: usize, n_max: u64) -> Vec<(i64, BigInt)> {
    (1..=n_max)
        .map(|n| {
            let c = count_nonattacking(ms, &Board::square(), n, q).unwrap();
            (n as i64, BigInt::from(c.labelled))
        })
        .collect()
}

#[test]
fn value_at_minus_one_is_the_type_count() {
    // (moves, q, period)
    let cases: &[(&str, usize, usize)] = &[
        ("1,0", 2, 1),
        ("1,0", 3, 1),
        ("rook", 2, 1),
        ("rook", 3, 1),
        ("bishop", 2, 1),
        ("bishop", 3, 2),
        ("semiqueen", 2, 1),
        ("semiqueen", 3, 1),
        ("1,0;0,1;1,2", 3, 2),
        ("queen", 2, 1),
        ("queen", 3, 2),
    ];
    for &(moves, q, period) in cases {
        let ms = MoveSet::parse(moves).unwrap();
        let data = labelled_counts(&ms, q, 26);
        let (_, unlabelled) = types_from_counts(&data, period, q).unwrap();
        assert_eq!(
            unlabelled,
            known_types(q, ms.r()).unwrap().value.into(),
            "{moves} q={q}"
        );
        let found = find_period(&data, 2 * q, 4).unwrap();
        assert_eq!(found.period, period, "{moves} q={q}");
    }
}

#[test]
fn single_piece_counts_cells() {
    let data: Vec<(i64, BigInt)> = (1..=8).map(|n| (n, BigInt::from(n * n))).collect();
    assert_eq!(types_from_counts(&data, 1, 1).unwrap(), (1.into(), 1.into()));
}

#[test]
fn two_queens_closed_form() {
    let ms = MoveSet::named("queen").unwrap();
    for n in 1..=20i64 {
        let c = count_nonattacking(&ms, &Board::square(), n as u64, 2).unwrap();
        assert_eq!(c.unlabelled as i64, n * (n - 1) * (n - 2) * (3 * n - 1) / 6, "n={n}");
    }
}

#[test]
fn wrong_period_is_detected() {
    let ms = MoveSet::named("queen").unwrap();
    let data = labelled_counts(&ms, 3, 26);
    assert!(fit_quasipoly(&data, 1, 6).is_err());
}
