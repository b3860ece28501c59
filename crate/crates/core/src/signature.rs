//! Labelled and unlabelled combinatorial types of configurations.
//!
//! A labelled type records, for each ordered pair of pieces `(i, k)`, which
//! region of the move-line arrangement centred at piece `i` contains piece
//! `k`. Regions are numbered `1..=2r` counterclockwise; region 1 starts at the
//! ray of smallest nonnegative angle. The equivalent left/right encoding is
//! [`T2Type`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angle_cmp, rat, BasicMove, MoveSet, Point, Rational, Side};

/// The `2r` rays of a move set in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionNumbering {
    rays: Vec<(i64, i64)>,
}

impl RegionNumbering {
    pub fn new(ms: &MoveSet) -> Self {
        let mut rays: Vec<(i64, i64)> = ms
            .moves()
            .iter()
            .flat_map(|m| [(m.c(), m.d()), (-m.c(), -m.d())])
            .collect();
        rays.sort_by(|a, b| angle_cmp(*a, *b));
        RegionNumbering { rays }
    }

    pub fn rays(&self) -> &[(i64, i64)] {
        &self.rays
    }

    pub fn region_count(&self) -> usize {
        self.rays.len()
    }

    /// Region (1-based) containing the direction `(x, y)`, or `None` when the
    /// direction lies on a ray (or is zero).
    pub fn region_of(&self, x: i64, y: i64) -> Option<u8> {
        let n = self.rays.len();
        let cross = |ray: (i64, i64)| ray.0 as i128 * y as i128 - ray.1 as i128 * x as i128;
        (0..n)
            .find(|&k| cross(self.rays[k]) > 0 && cross(self.rays[(k + 1) % n]) < 0)
            .map(|k| k as u8 + 1)
    }

    pub fn region_of_rational(&self, x: &Rational, y: &Rational) -> Option<u8> {
        let n = self.rays.len();
        let cross = |ray: (i64, i64)| rat(ray.0) * y - rat(ray.1) * x;
        (0..n)
            .find(|&k| cross(self.rays[k]).is_positive() && cross(self.rays[(k + 1) % n]).is_negative())
            .map(|k| k as u8 + 1)
    }

    /// A direction strictly inside region `k` (1-based).
    pub fn interior_direction(&self, k: u8) -> (i64, i64) {
        let n = self.rays.len();
        let a = self.rays[k as usize - 1];
        let b = self.rays[k as usize % n];
        if a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128 > 0 {
            (a.0 + b.0, a.1 + b.1)
        } else {
            // half-plane cone: rotate the first ray a quarter turn
            (-a.1, a.0)
        }
    }
}

pub fn region_numbering(ms: &MoveSet) -> Vec<(i64, i64)> {
    RegionNumbering::new(ms).rays
}

/// Positions of `q` labelled pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pieces: Vec<Point>,
}

impl Config {
    pub fn new(pieces: Vec<Point>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument(
                "a configuration needs at least one piece".into(),
            ));
        }
        for i in 0..pieces.len() {
            for k in i + 1..pieces.len() {
                if pieces[i] == pieces[k] {
                    return Err(Error::CoincidentPieces {
                        first: i + 1,
                        second: k + 1,
                    });
                }
            }
        }
        Ok(Config { pieces })
    }

    pub fn from_ints(pts: &[(i64, i64)]) -> Result<Self> {
        Config::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect())
    }

    pub fn pieces(&self) -> &[Point] {
        &self.pieces
    }

    pub fn q(&self) -> usize {
        self.pieces.len()
    }
}

fn attack_between(ms: &MoveSet, a: &Point, b: &Point) -> Option<usize> {
    let (dx, dy) = b.sub(a);
    ms.moves()
        .iter()
        .position(|m| (rat(m.c()) * &dy - rat(m.d()) * &dx) == rat(0))
}

pub fn is_nonattacking(ms: &MoveSet, cfg: &Config) -> bool {
    let p = cfg.pieces();
    (0..p.len()).all(|i| (i + 1..p.len()).all(|k| attack_between(ms, &p[i], &p[k]).is_none()))
}

/// Labelled type in encoding T1. Entries are stored row-major as a `q × q`
/// matrix of region indices with zeros on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "TypeRepr", try_from = "TypeRepr")]
pub struct LabelledType {
    q: usize,
    r: usize,
    entries: Vec<u8>,
}

impl LabelledType {
    /// Builds a type from its row-major `q × q` region matrix, checking the
    /// antipodal pairing `entries[k][i] = entries[i][k] ± r`.
    pub fn from_matrix(q: usize, r: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != q * q || r == 0 || 2 * r > u8::MAX as usize {
            return Err(Error::InvalidArgument("type matrix has the wrong shape".into()));
        }
        let t = LabelledType { q, r, entries };
        for i in 0..q {
            if t.entries[i * q + i] != 0 {
                return Err(Error::InvalidArgument("diagonal entries must be 0".into()));
            }
            for k in 0..q {
                if i == k {
                    continue;
                }
                let v = t.entry(i, k);
                if v == 0 || v as usize > 2 * r {
                    return Err(Error::InvalidArgument(format!("region {v} out of range")));
                }
                if t.entry(k, i) != antipode(v, r) {
                    return Err(Error::InvalidArgument(format!(
                        "entries ({},{}) and ({},{}) are not antipodal",
                        i + 1,
                        k + 1,
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(t)
    }

    /// The type of a single piece.
    pub fn trivial(r: usize) -> Self {
        LabelledType {
            q: 1,
            r,
            entries: vec![0],
        }
    }

    pub(crate) fn from_matrix_unchecked(q: usize, r: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), q * q);
        LabelledType { q, r, entries }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Region (1-based) of piece `k` around piece `i`; indices 0-based.
    pub fn entry(&self, i: usize, k: usize) -> u8 {
        self.entries[i * self.q + k]
    }

    pub fn matrix(&self) -> &[u8] {
        &self.entries
    }

    /// `t'[(i,k)] = t[(σ(i),σ(k))]`.
    pub fn relabel(&self, perm: &[usize]) -> LabelledType {
        let q = self.q;
        let mut entries = vec![0; q * q];
        for i in 0..q {
            for k in 0..q {
                entries[i * q + k] = self.entries[perm[i] * q + perm[k]];
            }
        }
        LabelledType { q, r: self.r, entries }
    }

    /// Number of relabelings fixing this type.
    pub fn stabilizer_size(&self) -> u64 {
        let mut count = 0;
        for_each_permutation(self.q, |perm| {
            if self.relabel(perm) == *self {
                count += 1;
            }
        });
        count
    }

    pub fn orbit_size(&self) -> u64 {
        factorial(self.q) / self.stabilizer_size()
    }
}

pub(crate) fn antipode(region: u8, r: usize) -> u8 {
    ((region as usize + r - 1) % (2 * r) + 1) as u8
}

pub fn factorial(q: usize) -> u64 {
    (1..=q as u64).product()
}

/// Calls `f` on every permutation of `0..q` (Heap's algorithm).
pub(crate) fn for_each_permutation(q: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..q).collect();
    let mut c = vec![0usize; q];
    f(&perm);
    let mut i = 0;
    while i < q {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TypeRepr {
    q: usize,
    r: usize,
    entries: Vec<[usize; 3]>,
}

impl From<LabelledType> for TypeRepr {
    fn from(t: LabelledType) -> Self {
        let mut entries = Vec::with_capacity(t.q * t.q.saturating_sub(1));
        for i in 0..t.q {
            for k in 0..t.q {
                if i != k {
                    entries.push([i + 1, k + 1, t.entry(i, k) as usize]);
                }
            }
        }
        TypeRepr {
            q: t.q,
            r: t.r,
            entries,
        }
    }
}

impl TryFrom<TypeRepr> for LabelledType {
    type Error = Error;

    fn try_from(repr: TypeRepr) -> Result<Self> {
        let q = repr.q;
        let mut m = vec![0u8; q * q];
        let mut seen = 0;
        for [i, k, v] in repr.entries {
            if i == 0 || k == 0 || i > q || k > q || i == k || v > u8::MAX as usize {
                return Err(Error::Parse(format!("bad type entry [{i},{k},{v}]")));
            }
            m[(i - 1) * q + (k - 1)] = v as u8;
            seen += 1;
        }
        if seen != q * q.saturating_sub(1) {
            return Err(Error::Parse("type entries incomplete".into()));
        }
        LabelledType::from_matrix(q, repr.r, m)
    }
}

impl fmt::Display for LabelledType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.q {
            if i > 0 {
                f.write_str("|")?;
            }
            for k in 0..self.q {
                if k > 0 {
                    f.write_str(" ")?;
                }
                if i == k {
                    f.write_str("-")?;
                } else {
                    write!(f, "{}", self.entry(i, k))?;
                }
            }
        }
        f.write_str("]")
    }
}

pub fn labelled_type(ms: &MoveSet, cfg: &Config) -> Result<LabelledType> {
    labelled_type_with(&RegionNumbering::new(ms), ms, cfg)
}

pub(crate) fn labelled_type_with(numbering: &RegionNumbering, ms: &MoveSet, cfg: &Config) -> Result<LabelledType> {
    let p = cfg.pieces();
    let q = p.len();
    let mut entries = vec![0u8; q * q];
    for i in 0..q {
        for k in i + 1..q {
            let (dx, dy) = p[k].sub(&p[i]);
            let region = numbering.region_of_rational(&dx, &dy).ok_or_else(|| {
                let j = attack_between(ms, &p[i], &p[k]).unwrap_or(0);
                Error::Attacking {
                    attacker: i + 1,
                    attacked: k + 1,
                    move_index: j + 1,
                }
            })?;
            entries[i * q + k] = region;
            entries[k * q + i] = antipode(region, ms.r());
        }
    }
    Ok(LabelledType::from_matrix_unchecked(q, ms.r(), entries))
}

/// Labelled type of pieces at integer points; `None` if two attack.
pub(crate) fn labelled_type_int(numbering: &RegionNumbering, pts: &[(i64, i64)]) -> Option<LabelledType> {
    let q = pts.len();
    let r = numbering.region_count() / 2;
    let mut entries = vec![0u8; q * q];
    for i in 0..q {
        for k in i + 1..q {
            let region = numbering.region_of(pts[k].0 - pts[i].0, pts[k].1 - pts[i].1)?;
            entries[i * q + k] = region;
            entries[k * q + i] = antipode(region, r);
        }
    }
    Some(LabelledType::from_matrix_unchecked(q, r, entries))
}

/// A labelled type with its labels forgotten, represented by the
/// lexicographically smallest relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnlabelledType {
    canonical: LabelledType,
}

impl UnlabelledType {
    pub fn canonical(&self) -> &LabelledType {
        &self.canonical
    }

    pub fn orbit_size(&self) -> u64 {
        self.canonical.orbit_size()
    }
}

impl fmt::Display for UnlabelledType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canonical.fmt(f)
    }
}

pub fn canonical_unlabelled(t: &LabelledType) -> UnlabelledType {
    let mut best = t.entries.clone();
    let mut scratch = vec![0u8; t.entries.len()];
    let q = t.q;
    for_each_permutation(q, |perm| {
        for i in 0..q {
            for k in 0..q {
                scratch[i * q + k] = t.entries[perm[i] * q + perm[k]];
            }
        }
        if scratch < best {
            best.copy_from_slice(&scratch);
        }
    });
    UnlabelledType {
        canonical: LabelledType::from_matrix_unchecked(q, t.r, best),
    }
}

/// Replaces move `j` (1-based) by its reverse.
pub fn reorient(ms: &MoveSet, j: usize) -> Result<MoveSet> {
    if j == 0 || j > ms.r() {
        return Err(Error::InvalidArgument(format!("move index {j} out of 1..={}", ms.r())));
    }
    let mut moves: Vec<BasicMove> = ms.moves().to_vec();
    moves[j - 1] = moves[j - 1].reversed();
    MoveSet::new(moves)
}

/// The type of the same configuration after reversing move `j`. With region
/// numbering anchored at a fixed angle the cones do not move, so the T1 data
/// is unchanged; the T2 view flips every side of line `j`.
pub fn reorient_type(t: &LabelledType, ms: &MoveSet, j: usize) -> Result<LabelledType> {
    let reoriented = reorient(ms, j)?;
    let mut t2 = t1_to_t2(t, ms)?;
    t2.flip_line(j - 1);
    t2_to_t1(&t2, &reoriented)
}

/// Labelled type in encoding T2: the side of oriented move line `j` of piece
/// `i` on which piece `k` lies.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct T2Type {
    q: usize,
    r: usize,
    sides: Vec<Side>,
}

impl T2Type {
    pub fn new(q: usize, r: usize) -> Self {
        T2Type {
            q,
            r,
            sides: vec![Side::On; q * r * q],
        }
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.r + j) * self.q + k
    }

    /// Indices 0-based.
    pub fn side(&self, i: usize, j: usize, k: usize) -> Side {
        self.sides[self.idx(i, j, k)]
    }

    pub fn set_side(&mut self, i: usize, j: usize, k: usize, s: Side) {
        let at = self.idx(i, j, k);
        self.sides[at] = s;
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    fn flip_line(&mut self, j: usize) {
        for i in 0..self.q {
            for k in 0..self.q {
                let at = self.idx(i, j, k);
                self.sides[at] = self.sides[at].flipped();
            }
        }
    }
}

/// `table[region − 1][j]`: the side of oriented line `j` containing the
/// region's cone.
fn side_table(ms: &MoveSet) -> Vec<Vec<Side>> {
    let numbering = RegionNumbering::new(ms);
    (1..=numbering.region_count() as u8)
        .map(|k| {
            let (x, y) = numbering.interior_direction(k);
            ms.moves()
                .iter()
                .map(|m| match m.cross_int(x, y).signum() {
                    1 => Side::Left,
                    -1 => Side::Right,
                    _ => Side::On,
                })
                .collect()
        })
        .collect()
}

pub fn t1_to_t2(t: &LabelledType, ms: &MoveSet) -> Result<T2Type> {
    if t.r != ms.r() {
        return Err(Error::InvalidArgument("type and move set disagree on r".into()));
    }
    let table = side_table(ms);
    let mut out = T2Type::new(t.q, t.r);
    for i in 0..t.q {
        for k in 0..t.q {
            if i == k {
                continue;
            }
            let row = &table[t.entry(i, k) as usize - 1];
            for (j, s) in row.iter().enumerate() {
                out.set_side(i, j, k, *s);
            }
        }
    }
    Ok(out)
}

pub fn t2_to_t1(t2: &T2Type, ms: &MoveSet) -> Result<LabelledType> {
    if t2.r != ms.r() {
        return Err(Error::InvalidArgument("type and move set disagree on r".into()));
    }
    let table = side_table(ms);
    let lookup: BTreeMap<&[Side], u8> = table
        .iter()
        .enumerate()
        .map(|(k, row)| (row.as_slice(), k as u8 + 1))
        .collect();
    let q = t2.q;
    let mut entries = vec![0u8; q * q];
    for i in 0..q {
        for k in 0..q {
            if i == k {
                continue;
            }
            let pattern: Vec<Side> = (0..t2.r).map(|j| t2.side(i, j, k)).collect();
            entries[i * q + k] = *lookup.get(pattern.as_slice()).ok_or_else(|| Error::InconsistentSides {
                i: i + 1,
                k: k + 1,
                reason: "side pattern matches no region".into(),
            })?;
        }
    }
    LabelledType::from_matrix(q, t2.r, entries).map_err(|e| Error::InconsistentSides {
        i: 0,
        k: 0,
        reason: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn queen() -> MoveSet {
        MoveSet::named("queen").unwrap()
    }

    #[test]
    fn rook_numbering() {
        let rook = MoveSet::named("rook").unwrap();
        assert_eq!(region_numbering(&rook), vec![(1, 0), (0, 1), (-1, 0), (0, -1)]);
        let n = RegionNumbering::new(&rook);
        assert_eq!(n.region_of(2, 3), Some(1));
        assert_eq!(n.region_of(0, 3), None);
    }

    #[test]
    fn antipodal_regions_for_queen() {
        let n = RegionNumbering::new(&queen());
        let r = 4;
        for k in 1..=8u8 {
            let (x, y) = n.interior_direction(k);
            assert_eq!(n.region_of(x, y), Some(k));
            assert_eq!(n.region_of(-x, -y), Some(antipode(k, r)));
        }
    }

    #[test]
    fn figure_one_piece_has_six_regions() {
        let ms = MoveSet::from_pairs(&[(1, 0), (1, 2), (1, -2)]).unwrap();
        assert_eq!(RegionNumbering::new(&ms).region_count(), 6);
    }

    #[test]
    fn nonattacking_examples() {
        assert!(!is_nonattacking(
            &queen(),
            &Config::from_ints(&[(1, 1), (2, 2)]).unwrap()
        ));
        assert!(is_nonattacking(
            &queen(),
            &Config::from_ints(&[(1, 1), (2, 4)]).unwrap()
        ));
        assert!(is_nonattacking(&queen(), &Config::from_ints(&[(5, 5)]).unwrap()));
        assert!(matches!(
            Config::from_ints(&[(1, 1), (1, 1)]),
            Err(Error::CoincidentPieces { .. })
        ));
    }

    #[test]
    fn attacking_pair_reported() {
        let err = labelled_type(&queen(), &Config::from_ints(&[(0, 0), (3, 1), (4, 1)]).unwrap());
        assert_eq!(
            err,
            Err(Error::Attacking {
                attacker: 2,
                attacked: 3,
                move_index: 1
            })
        );
    }

    #[test]
    fn queen_three_piece_table() {
        // Oracle: the queen's rays sit at multiples of 45°, so the region of a
        // direction is floor(angle / 45°) + 1.
        let pts = [(0i64, 0i64), (3, 1), (1, 5)];
        let oracle = |i: usize, k: usize| {
            let (dx, dy) = ((pts[k].0 - pts[i].0) as f64, (pts[k].1 - pts[i].1) as f64);
            let mut a = dy.atan2(dx).to_degrees();
            if a < 0.0 {
                a += 360.0;
            }
            (a / 45.0).floor() as u8 + 1
        };
        let t = labelled_type(&queen(), &Config::from_ints(&pts).unwrap()).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                if i != k {
                    assert_eq!(t.entry(i, k), oracle(i, k), "pair ({i},{k})");
                }
            }
        }
        // frozen from the oracle
        assert_eq!(t.matrix(), &[0, 1, 2, 5, 0, 3, 6, 7, 0]);
    }

    #[test]
    fn two_piece_antipode() {
        let t = labelled_type(&queen(), &Config::from_ints(&[(0, 0), (1, 3)]).unwrap()).unwrap();
        assert_eq!(t.entry(1, 0), antipode(t.entry(0, 1), 4));
        assert_eq!(t.entry(0, 1), 2);
        assert_eq!(t.entry(1, 0), 6);
    }

    #[test]
    fn figure_one_types() {
        // Two pieces with moves of slope 0 and ±2: one placement per region.
        let ms = MoveSet::from_pairs(&[(1, 0), (1, 2), (1, -2)]).unwrap();
        let n = RegionNumbering::new(&ms);
        let mut labelled = BTreeSet::new();
        let mut unlabelled = BTreeSet::new();
        for k in 1..=6u8 {
            let d = n.interior_direction(k);
            let t = labelled_type_int(&n, &[(0, 0), d]).unwrap();
            unlabelled.insert(canonical_unlabelled(&t));
            labelled.insert(t);
        }
        assert_eq!(labelled.len(), 6);
        assert_eq!(unlabelled.len(), 3);
    }

    #[test]
    fn canonical_single_piece() {
        let t = LabelledType::trivial(3);
        assert_eq!(canonical_unlabelled(&t).canonical(), &t);
        assert_eq!(t.orbit_size(), 1);
    }

    #[test]
    fn permutations_enumerated() {
        let mut seen = BTreeSet::new();
        for_each_permutation(4, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
        let mut count = 0;
        for_each_permutation(0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn reorientation() {
        let ms = queen();
        assert_eq!(reorient(&reorient(&ms, 3).unwrap(), 3).unwrap(), ms);
        assert!(reorient(&ms, 0).is_err());
        assert!(reorient(&ms, 5).is_err());

        let t = labelled_type(&ms, &Config::from_ints(&[(0, 0), (3, 1), (1, 5)]).unwrap()).unwrap();
        let flipped_ms = reorient(&ms, 2).unwrap();
        let t_back = reorient_type(&reorient_type(&t, &ms, 2).unwrap(), &flipped_ms, 2).unwrap();
        assert_eq!(t_back, t);

        let before = t1_to_t2(&t, &ms).unwrap();
        let after = t1_to_t2(&reorient_type(&t, &ms, 2).unwrap(), &flipped_ms).unwrap();
        for i in 0..3 {
            for k in 0..3 {
                if i == k {
                    continue;
                }
                for j in 0..4 {
                    let expect = if j == 1 {
                        before.side(i, j, k).flipped()
                    } else {
                        before.side(i, j, k)
                    };
                    assert_eq!(after.side(i, j, k), expect);
                }
            }
        }
    }

    #[test]
    fn t2_first_quadrant() {
        let rook = MoveSet::named("rook").unwrap();
        let t = labelled_type(&rook, &Config::from_ints(&[(0, 0), (1, 1)]).unwrap()).unwrap();
        assert_eq!(t.entry(0, 1), 1);
        let t2 = t1_to_t2(&t, &rook).unwrap();
        assert_eq!(t2.side(0, 0, 1), Side::Left);
        assert_eq!(t2.side(0, 1, 1), Side::Right);
        assert_eq!(t2_to_t1(&t2, &rook).unwrap(), t);
    }

    #[test]
    fn t2_rejects_impossible_pattern() {
        let ms = queen();
        let t = labelled_type(&ms, &Config::from_ints(&[(0, 0), (3, 1)]).unwrap()).unwrap();
        let mut t2 = t1_to_t2(&t, &ms).unwrap();
        // left of horizontal, right of vertical, but flip only the diagonal:
        // no cone of the queen matches
        t2.set_side(0, 2, 1, t2.side(0, 2, 1).flipped());
        t2.set_side(0, 3, 1, t2.side(0, 3, 1).flipped());
        assert!(matches!(t2_to_t1(&t2, &ms), Err(Error::InconsistentSides { .. })));
    }

    #[test]
    fn json_shape() {
        let t = labelled_type(&queen(), &Config::from_ints(&[(0, 0), (3, 1)]).unwrap()).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"q":2,"r":4,"entries":[[1,2,1],[2,1,5]]}"#);
        let back: LabelledType = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"q":2,"r":4,"entries":[[1,2,1],[2,1,4]]}"#;
        assert!(serde_json::from_str::<LabelledType>(bad).is_err());
    }

    #[test]
    fn translation_invariance() {
        let ms = MoveSet::named("nightrider").unwrap();
        let cfg = Config::from_ints(&[(0, 0), (5, 1), (-2, 7), (3, -4)]).unwrap();
        let t = labelled_type(&ms, &cfg).unwrap();
        let (dx, dy) = (Rational::new(7.into(), 3.into()), rat(-11));
        let moved = Config::new(cfg.pieces().iter().map(|p| p.translate(&dx, &dy)).collect()).unwrap();
        assert_eq!(labelled_type(&ms, &moved).unwrap(), t);
    }
}
