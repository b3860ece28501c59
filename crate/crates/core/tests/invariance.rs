mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rider_types::boards::Board;
use rider_types::census::{geometric_census, stabilized_census, Census};
use rider_types::finitefield::types_ff;
use rider_types::geometry::{rat, ProjectiveMap, Slope};
use rider_types::signature::{canonical_unlabelled, labelled_type, t1_to_t2, t2_to_t1, Config, T2Type, UnlabelledType};
use rider_types::{MoveSet, Point};

fn det(map: &ProjectiveMap) -> rider_types::geometry::Rational {
    let m = map.matrix();
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

fn flip_all(t: &T2Type) -> T2Type {
    let mut out = t.clone();
    for i in 0..t.q() {
        for j in 0..t.r() {
            for k in 0..t.q() {
                if i != k {
                    out.set_side(i, j, k, t.side(i, j, k).flipped());
                }
            }
        }
    }
    out
}

/// Carries a census of `ms` to one of `map(ms)` through the side data.
fn transport(census: &Census, ms: &MoveSet, map: &ProjectiveMap) -> BTreeSet<UnlabelledType> {
    let image = map.apply_moveset(ms).unwrap();
    let reverse = det(map) < rat(0);
    census
        .types
        .iter()
        .map(|u| {
            let t2 = t1_to_t2(u.canonical(), ms).unwrap();
            let t2 = if reverse { flip_all(&t2) } else { t2 };
            canonical_unlabelled(&t2_to_t1(&t2, &image).unwrap())
        })
        .collect()
}

#[test]
fn affine_maps_preserve_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["queen", "trident", "nightrider"] {
        let ms = MoveSet::named(name).unwrap();
        let mut tried = 0;
        while tried < 200 {
            let a = [
                [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
                [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
            ];
            let Ok(map) = ProjectiveMap::affine(
                [[rat(a[0][0]), rat(a[0][1])], [rat(a[1][0]), rat(a[1][1])]],
                [rat(rng.gen_range(-5..=5)), rat(rng.gen_range(-5..=5))],
            ) else {
                continue;
            };
            let pts: Vec<(i64, i64)> = (0..4)
                .map(|_| (rng.gen_range(-30..=30), rng.gen_range(-30..=30)))
                .collect();
            let Ok(t) = Config::from_ints(&pts).and_then(|c| labelled_type(&ms, &c)) else {
                continue;
            };
            tried += 1;
            let image_ms = map.apply_moveset(&ms).unwrap();
            let image_pts: Vec<Point> = pts
                .iter()
                .map(|&(x, y)| map.apply(&Point::int(x, y)).unwrap())
                .collect();
            let image_t = labelled_type(&image_ms, &Config::new(image_pts).unwrap()).unwrap();
            let before = t1_to_t2(&t, &ms).unwrap();
            let after = t1_to_t2(&image_t, &image_ms).unwrap();
            let expect = if det(&map) > rat(0) { before } else { flip_all(&before) };
            assert_eq!(after, expect, "{name} under {:?}", map.matrix());
        }
    }
}

#[test]
fn three_move_sets_map_to_zero_one_infinity() {
    let target = MoveSet::named("semiqueen").unwrap();
    let target_slopes = target.slopes();
    for pairs in [
        vec![(1, 0), (1, 2), (1, -2)],
        vec![(0, 1), (1, 1), (1, -1)],
        vec![(2, 1), (1, 3), (1, -1)],
    ] {
        let ms = MoveSet::from_pairs(&pairs).unwrap();
        let slopes = ms.slopes();
        let map = ProjectiveMap::between_slopes(
            [&slopes[0], &slopes[1], &slopes[2]],
            [&target_slopes[0], &target_slopes[1], &target_slopes[2]],
        )
        .unwrap();
        let image = map.apply_moveset(&ms).unwrap();
        let image_slopes: BTreeSet<String> = image.slopes().iter().map(Slope::to_string).collect();
        assert_eq!(image_slopes, target_slopes.iter().map(Slope::to_string).collect());
        for q in 2..=3 {
            let census = geometric_census(&ms, q, 1).unwrap();
            let image_census = geometric_census(&image, q, 1).unwrap();
            assert_eq!(transport(&census, &ms, &map), image_census.types, "{ms} q={q}");
        }
        assert_eq!(types_ff(&ms, 4).unwrap(), types_ff(&image, 4).unwrap());
    }
}

#[test]
fn board_does_not_matter_for_pairs_and_triples() {
    let semiqueen = MoveSet::named("semiqueen").unwrap();
    let rook = MoveSet::named("triangular-rook").unwrap();
    for q in 1..=3 {
        let (square, _) = stabilized_census(&semiqueen, &Board::square(), q, 1, 24, 3).unwrap();
        let (tri, _) = stabilized_census(&semiqueen, &Board::triangle(), q, 1, 40, 3).unwrap();
        let (tri_rook, rep) = stabilized_census(&rook, &Board::triangle(), q, 1, 40, 3).unwrap();
        assert!(
            square.exact && tri.exact && tri_rook.exact,
            "q={q}: {} {} {} / {:?}",
            square.size,
            tri.size,
            tri_rook.size,
            rep
        );
        assert!(square.same_types(&tri));
        assert_eq!(
            (square.size, square.labelled_count),
            (tri_rook.size, tri_rook.labelled_count)
        );
        let pentagon = Board::parse("poly:0,0;4,0;5,3;2,5;-1,3").unwrap();
        let (pent, _) = stabilized_census(&semiqueen, &pentagon, q, 1, 24, 3).unwrap();
        assert!(square.same_types(&pent));
    }
}
