use std::collections::HashSet;

use rayon::prelude::*;

use super::{Census, CensusMeta, Engine};
use crate::error::{Error, Result};
use crate::geometry::{LineArrangement, MoveSet, Point};
use crate::signature::{labelled_type_with, Config, LabelledType, RegionNumbering};

/// Sample points for the next piece: `per_region` points in every region of
/// the arrangement of move lines through the pieces already placed.
pub(crate) fn next_positions(ms: &MoveSet, placed: &[Point], per_region: usize) -> Vec<Point> {
    let arr = LineArrangement::move_lines(ms, placed).expect("nonattacking pieces have distinct lines");
    arr.region_samples(per_region).into_iter().flatten().collect()
}

fn grow(
    ms: &MoveSet,
    numbering: &RegionNumbering,
    placed: &mut Vec<Point>,
    q: usize,
    refinement: usize,
    out: &mut HashSet<LabelledType>,
) {
    if placed.len() == q {
        let cfg = Config::new(placed.clone()).expect("distinct by construction");
        out.insert(labelled_type_with(numbering, ms, &cfg).expect("nonattacking by construction"));
        return;
    }
    for p in next_positions(ms, placed, refinement) {
        placed.push(p);
        grow(ms, numbering, placed, q, refinement, out);
        placed.pop();
    }
}

/// Types reached by placing piece 1 at the origin and every later piece at
/// sample points of the regions cut out by the earlier pieces' move lines.
///
/// For `q ≤ 3` the position of piece 2 inside its region does not matter, so
/// one point per region reaches every type and the census is exact. For
/// larger `q` it is a lower bound; `refinement > 1` samples more points per
/// region.
pub fn geometric_census(ms: &MoveSet, q: usize, refinement: usize) -> Result<Census> {
    if q == 0 || refinement == 0 {
        return Err(Error::InvalidArgument("need q ≥ 1 and refinement ≥ 1".into()));
    }
    let numbering = RegionNumbering::new(ms);
    let origin = Point::origin();
    let labelled: HashSet<LabelledType> = if q == 1 {
        HashSet::from([LabelledType::trivial(ms.r())])
    } else {
        next_positions(ms, std::slice::from_ref(&origin), refinement)
            .into_par_iter()
            .map(|second| {
                let mut out = HashSet::new();
                let mut placed = vec![origin.clone(), second];
                grow(ms, &numbering, &mut placed, q, refinement, &mut out);
                out
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };
    let meta = CensusMeta {
        refinement: Some(refinement),
        ..CensusMeta::default()
    };
    Ok(Census::from_labelled(Engine::Geometric, ms, q, labelled, meta, q <= 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::t3_closed_form;

    #[test]
    fn small_censuses() {
        let ms = MoveSet::named("queen").unwrap();
        assert_eq!(geometric_census(&ms, 1, 1).unwrap().size, 1);
        let two = geometric_census(&ms, 2, 1).unwrap();
        assert_eq!((two.size, two.labelled_count), (4, 8));
        assert!(two.exact);
    }

    #[test]
    fn nightrider_triples() {
        let ms = MoveSet::named("nightrider").unwrap();
        let c = geometric_census(&ms, 3, 1).unwrap();
        assert_eq!(c.size, 36);
        assert_eq!(c.labelled_count, 216);
    }

    #[test]
    fn five_move_triples() {
        let ms = MoveSet::from_pairs(&[(1, 0), (0, 1), (1, 1), (2, -1), (1, 3)]).unwrap();
        assert_eq!(
            geometric_census(&ms, 3, 1).unwrap().size as u64,
            t3_closed_form(5).unwrap()
        );
    }

    #[test]
    fn one_move_rider_has_one_type() {
        let ms = MoveSet::from_pairs(&[(1, 0)]).unwrap();
        for q in 1..=5 {
            assert_eq!(geometric_census(&ms, q, 1).unwrap().size, 1, "q={q}");
        }
    }

    #[test]
    fn refinement_only_grows() {
        let ms = MoveSet::named("queen").unwrap();
        let coarse = geometric_census(&ms, 3, 1).unwrap();
        let fine = geometric_census(&ms, 3, 2).unwrap();
        assert!(coarse.types.is_subset(&fine.types));
        assert_eq!(fine.size, 36);
    }
}
