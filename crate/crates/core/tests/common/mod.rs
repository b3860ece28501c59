//! Independent oracles and property checks shared by the integration tests
//! and the acceptance harness.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rider_types::census::geometric_census;
use rider_types::finitefield::{last_level_count, torus_count, valid_prime, Field, FpLine};
use rider_types::geometry::{LineArrangement, OrientedLine, Side};
use rider_types::signature::{
    canonical_unlabelled, labelled_type, reorient, reorient_type, t1_to_t2, Config, LabelledType,
};
use rider_types::{BasicMove, Error, MoveSet, Point};

/// Region index of direction `(dx, dy)` by floating-point angles: rays
/// sorted by `atan2` from the positive x-axis, region `k` strictly between
/// rays `k` and `k+1`.
pub fn float_region(ms: &MoveSet, dx: f64, dy: f64) -> Option<u8> {
    let tau = std::f64::consts::TAU;
    let angle = |x: f64, y: f64| y.atan2(x).rem_euclid(tau);
    let mut rays: Vec<f64> = ms
        .moves()
        .iter()
        .flat_map(|m| {
            let (c, d) = (m.c() as f64, m.d() as f64);
            [angle(c, d), angle(-c, -d)]
        })
        .collect();
    rays.sort_by(f64::total_cmp);
    let a = angle(dx, dy);
    let n = rays.len();
    for k in 0..n {
        let lo = rays[k];
        let hi = if k + 1 < n { rays[k + 1] } else { rays[0] + tau };
        let a2 = if a < lo { a + tau } else { a };
        if lo + 1e-12 < a2 && a2 < hi - 1e-12 {
            return Some(k as u8 + 1);
        }
    }
    None
}

pub fn float_type(ms: &MoveSet, pts: &[(i64, i64)]) -> Option<Vec<u8>> {
    let q = pts.len();
    let mut out = vec![0u8; q * q];
    for i in 0..q {
        for k in 0..q {
            if i != k {
                let dx = (pts[k].0 - pts[i].0) as f64;
                let dy = (pts[k].1 - pts[i].1) as f64;
                out[i * q + k] = float_region(ms, dx, dy)?;
            }
        }
    }
    Some(out)
}

/// `q`-tuples of points of `F_p²` with no two on a common move line, by
/// enumerating every tuple.
pub fn naive_torus(ms: &MoveSet, q: usize, p: i64) -> u64 {
    let moves: Vec<(i64, i64)> = ms.moves().iter().map(|m| (m.c(), m.d())).collect();
    let attacks = |a: (i64, i64), b: (i64, i64)| {
        moves
            .iter()
            .any(|&(c, d)| (d * (b.0 - a.0) - c * (b.1 - a.1)).rem_euclid(p) == 0)
    };
    let pts: Vec<(i64, i64)> = (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).collect();
    fn rec(
        pts: &[(i64, i64)],
        chosen: &mut Vec<(i64, i64)>,
        q: usize,
        attacks: &dyn Fn((i64, i64), (i64, i64)) -> bool,
    ) -> u64 {
        if chosen.len() == q {
            return 1;
        }
        let mut total = 0;
        for &pt in pts {
            if chosen.iter().all(|&c| !attacks(c, pt)) {
                chosen.push(pt);
                total += rec(pts, chosen, q, attacks);
                chosen.pop();
            }
        }
        total
    }
    rec(&pts, &mut Vec::new(), q, &attacks)
}

/// Unordered nonattacking placements on the `n × n` square board by direct
/// enumeration of subsets.
pub fn naive_square_count(ms: &MoveSet, n: i64, q: usize) -> u64 {
    let cells: Vec<(i64, i64)> = (1..=n).flat_map(|x| (1..=n).map(move |y| (x, y))).collect();
    let moves: Vec<(i64, i64)> = ms.moves().iter().map(|m| (m.c(), m.d())).collect();
    let ok = |a: (i64, i64), b: (i64, i64)| moves.iter().all(|&(c, d)| d * (b.0 - a.0) != c * (b.1 - a.1));
    fn rec(
        cells: &[(i64, i64)],
        start: usize,
        chosen: &mut Vec<(i64, i64)>,
        q: usize,
        ok: &dyn Fn((i64, i64), (i64, i64)) -> bool,
    ) -> u64 {
        if chosen.len() == q {
            return 1;
        }
        let mut total = 0;
        for i in start..cells.len() {
            if chosen.iter().all(|&c| ok(c, cells[i])) {
                chosen.push(cells[i]);
                total += rec(cells, i + 1, chosen, q, ok);
                chosen.pop();
            }
        }
        total
    }
    rec(&cells, 0, &mut Vec::new(), q, &ok)
}

/// `(anchor, direction)` of a line with integer data.
pub type IntLine = ((i64, i64), (i64, i64));

pub fn steiner_vs_slab(lines: &[IntLine]) -> Result<(), String> {
    let lines: Vec<OrientedLine> = lines
        .iter()
        .filter_map(|&((x, y), (c, d))| {
            BasicMove::new(c, d)
                .ok()
                .map(|m| OrientedLine::new(Point::int(x, y), m))
        })
        .collect();
    let arr = LineArrangement::dedup(lines);
    let reps = arr.region_representatives();
    let signs: BTreeSet<Vec<Side>> = reps.iter().map(|p| arr.sign_vector(p)).collect();
    if signs.len() != reps.len() {
        return Err("two representatives share a region".into());
    }
    if signs.iter().any(|s| s.contains(&Side::On)) {
        return Err("a representative lies on a line".into());
    }
    if arr.steiner_count() != reps.len() as u64 {
        return Err(format!(
            "steiner {} vs slab {} for {} lines",
            arr.steiner_count(),
            reps.len(),
            arr.lines().len()
        ));
    }
    Ok(())
}

fn antipode(v: u8, r: usize) -> u8 {
    ((v as usize + r - 1) % (2 * r) + 1) as u8
}

/// Antipodal invariant and agreement with [`float_type`]; attacking or
/// coincident configurations must be rejected consistently.
pub fn antipodal(ms: &MoveSet, pts: &[(i64, i64)]) -> Result<(), String> {
    let oracle = float_type(ms, pts);
    let distinct = pts.iter().collect::<BTreeSet<_>>().len() == pts.len();
    let t = match Config::from_ints(pts).and_then(|c| labelled_type(ms, &c)) {
        Ok(t) => t,
        Err(Error::Attacking { .. }) | Err(Error::CoincidentPieces { .. }) => {
            return if oracle.is_none() || !distinct {
                Ok(())
            } else {
                Err(format!("{pts:?} rejected but nonattacking"))
            };
        }
        Err(e) => return Err(e.to_string()),
    };
    let q = pts.len();
    for i in 0..q {
        for k in 0..q {
            if i != k && t.entry(k, i) != antipode(t.entry(i, k), ms.r()) {
                return Err(format!("entries ({i},{k}) not antipodal in {t}"));
            }
        }
    }
    match oracle {
        Some(o) if o == t.matrix() => Ok(()),
        other => Err(format!("float oracle {other:?} vs {:?}", t.matrix())),
    }
}

pub fn torus_vs_naive(ms: &MoveSet, q: usize, p: u64) -> Result<(), String> {
    let got = torus_count(ms, q, p);
    if !valid_prime(ms, p) {
        return match got {
            Err(Error::InvalidPrime { .. }) => Ok(()),
            other => Err(format!("invalid prime {p} accepted: {other:?}")),
        };
    }
    let got = got.map_err(|e| e.to_string())?;
    let want = naive_torus(ms, q, p as i64);
    if got.count != want.into() {
        return Err(format!("{ms} q={q} p={p}: {} vs naive {want}", got.count));
    }
    Ok(())
}

pub fn last_level_vs_scan(p: u64, raw: &[(i64, i64, i64)]) -> Result<(), String> {
    let field = Field::new(p).map_err(|e| e.to_string())?;
    let mut lines: Vec<FpLine> = Vec::new();
    for &(a, b, e) in raw {
        if let Ok(l) = FpLine::new(&field, a, b, e) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    let p32 = p as u32;
    let scan = (0..p32)
        .flat_map(|x| (0..p32).map(move |y| (x, y)))
        .filter(|&(x, y)| lines.iter().all(|l| !l.contains(&field, x, y)))
        .count() as u64;
    let got = last_level_count(&field, &lines).map_err(|e| e.to_string())?;
    if got != scan {
        return Err(format!("p={p}, {} lines: {got} vs scan {scan}", lines.len()));
    }
    Ok(())
}

/// Reversing a move permutes nothing in T1 and flips exactly one line in
/// T2, so the census is carried onto the census of the reoriented set.
pub fn reorientation(ms: &MoveSet, q: usize) -> Result<(), String> {
    let base = geometric_census(ms, q, 1).map_err(|e| e.to_string())?;
    for j in 1..=ms.r() {
        let flipped = reorient(ms, j).map_err(|e| e.to_string())?;
        let other = geometric_census(&flipped, q, 1).map_err(|e| e.to_string())?;
        let mapped: BTreeSet<_> = base
            .types
            .iter()
            .map(|u| reorient_type(u.canonical(), ms, j).map(|t| canonical_unlabelled(&t)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if mapped.len() != base.types.len() {
            return Err(format!("reorienting move {j} is not injective"));
        }
        if mapped != other.types {
            return Err(format!("reorienting move {j} does not carry the census"));
        }
        for u in &base.types {
            let t: &LabelledType = u.canonical();
            let before = t1_to_t2(t, ms).map_err(|e| e.to_string())?;
            let after = t1_to_t2(t, &flipped).map_err(|e| e.to_string())?;
            for i in 0..q {
                for k in (0..q).filter(|&k| k != i) {
                    for l in 0..ms.r() {
                        let expect = if l == j - 1 {
                            before.side(i, l, k).flipped()
                        } else {
                            before.side(i, l, k)
                        };
                        if after.side(i, l, k) != expect {
                            return Err(format!("T2 side ({i},{l},{k}) wrong after reversing move {j}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Seeded random move set with `r` moves and small coordinates.
pub fn random_moveset(rng: &mut impl rand::Rng, r: usize) -> MoveSet {
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    while pairs.len() < r {
        let mut cand = pairs.clone();
        cand.push((rng.gen_range(-4..=4), rng.gen_range(-4..=4)));
        if MoveSet::from_pairs(&cand).is_ok() {
            pairs = cand;
        }
    }
    MoveSet::from_pairs(&pairs).expect("checked")
}
