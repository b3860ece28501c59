use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::geometric::next_positions;
use crate::error::Result;
use crate::geometry::{LineArrangement, MoveSet, OrientedLine, Point, Side};
use crate::signature::{labelled_type, Config, LabelledType};

/// Two positions of a third piece inside one region of the first two
/// pieces' move lines that allow different types for a fourth piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub first: Point,
    pub second: Point,
    pub third_a: Point,
    pub third_b: Point,
    /// Sides of the first two pieces' move lines on which both third
    /// positions lie.
    pub region: Vec<Side>,
    /// A four-piece type reachable from exactly one of the two positions.
    pub distinguishing_type: LabelledType,
    pub distinguishing_from_a: bool,
    pub reachable_a: usize,
    pub reachable_b: usize,
    /// Third-piece positions examined before the witness was found.
    pub evaluated: usize,
}

fn reachable(ms: &MoveSet, placed: &[Point]) -> BTreeSet<LabelledType> {
    next_positions(ms, placed, 1)
        .into_iter()
        .map(|p| {
            let mut pts = placed.to_vec();
            pts.push(p);
            labelled_type(ms, &Config::new(pts).expect("distinct")).expect("nonattacking")
        })
        .collect()
}

/// Searches for a [`Witness`], examining at most `budget` third-piece
/// positions.
///
/// Within a region of the first two pieces' arrangement, the combinatorics
/// of the third piece's move lines can only change when one of them passes
/// through a vertex of that arrangement. The candidates are therefore one
/// point per region of the arrangement refined by every move line through
/// every vertex.
pub fn fours_witness(ms: &MoveSet, budget: usize) -> Result<Option<Witness>> {
    let first = Point::origin();
    let mut evaluated = 0;
    for second in next_positions(ms, std::slice::from_ref(&first), 1) {
        let base = [first.clone(), second.clone()];
        let m12 = LineArrangement::move_lines(ms, &base)?;
        let through_vertices = m12.vertices().into_keys().flat_map(|v| {
            ms.moves()
                .iter()
                .map(move |m| OrientedLine::new(v.clone(), *m))
                .collect::<Vec<_>>()
        });
        let refined = LineArrangement::dedup(m12.lines().iter().cloned().chain(through_vertices));
        let mut by_region: BTreeMap<Vec<Side>, Vec<Point>> = BTreeMap::new();
        for p in refined.region_representatives() {
            by_region.entry(m12.sign_vector(&p)).or_default().push(p);
        }
        for (region, candidates) in by_region {
            if candidates.len() < 2 {
                continue;
            }
            let reach = |p: &Point| reachable(ms, &[first.clone(), second.clone(), p.clone()]);
            if evaluated >= budget {
                return Ok(None);
            }
            let reach_a = reach(&candidates[0]);
            evaluated += 1;
            for b in &candidates[1..] {
                if evaluated >= budget {
                    return Ok(None);
                }
                let reach_b = reach(b);
                evaluated += 1;
                if reach_a != reach_b {
                    let (t, from_a) = match reach_a.difference(&reach_b).next() {
                        Some(t) => (t.clone(), true),
                        None => (reach_b.difference(&reach_a).next().expect("sets differ").clone(), false),
                    };
                    return Ok(Some(Witness {
                        first,
                        second,
                        third_a: candidates[0].clone(),
                        third_b: b.clone(),
                        region,
                        distinguishing_type: t,
                        distinguishing_from_a: from_a,
                        reachable_a: reach_a.len(),
                        reachable_b: reach_b.len(),
                        evaluated,
                    }));
                }
            }
        }
    }
    Ok(None)
}
