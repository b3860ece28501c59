//! Exact planar geometry over the rationals: basic moves, oriented lines,
//! intersections, sign vectors and region enumeration for finite line
//! arrangements, and projective maps acting on points and move sets.
//!
//! Nothing in this module uses floating point.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"a"` or `"a/b"`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(Error::Parse(format!("decimal input not accepted: {s:?}")));
    }
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(v) => write!(f, "{v}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

/// A direction vector `(c, d)` stored with `gcd(|c|, |d|) = 1`. Reduction
/// keeps the sign, so the orientation of the move is unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicMove {
    c: i64,
    d: i64,
}

impl BasicMove {
    pub fn new(c: i64, d: i64) -> Result<Self> {
        if c == 0 && d == 0 {
            return Err(Error::ZeroMove);
        }
        let g = c.gcd(&d);
        Ok(BasicMove { c: c / g, d: d / g })
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn reversed(&self) -> BasicMove {
        BasicMove { c: -self.c, d: -self.d }
    }

    pub fn slope(&self) -> Slope {
        slope_of(self)
    }

    /// `self × (x, y)` for an integer vector.
    pub fn cross_int(&self, x: i64, y: i64) -> i128 {
        self.c as i128 * y as i128 - self.d as i128 * x as i128
    }

    /// `self × other`; zero exactly when the two moves have the same slope.
    pub fn cross(&self, other: &BasicMove) -> i128 {
        self.cross_int(other.c, other.d)
    }

    /// The representative of `±self` pointing into the half-plane
    /// `c > 0`, or straight up when vertical.
    pub fn unoriented(&self) -> BasicMove {
        if self.c < 0 || (self.c == 0 && self.d < 0) {
            self.reversed()
        } else {
            *self
        }
    }
}

pub fn slope_of(mv: &BasicMove) -> Slope {
    if mv.c == 0 {
        Slope::Infinite
    } else {
        Slope::Finite(Rational::new(BigInt::from(mv.d), BigInt::from(mv.c)))
    }
}

impl fmt::Display for BasicMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.c, self.d)
    }
}

/// The basic moves of a rider. Slopes are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveSet {
    moves: Vec<BasicMove>,
}

impl MoveSet {
    pub fn new(moves: Vec<BasicMove>) -> Result<Self> {
        if moves.is_empty() {
            return Err(Error::EmptyMoveSet);
        }
        for (i, a) in moves.iter().enumerate() {
            for (j, b) in moves.iter().enumerate().skip(i + 1) {
                if a.cross(b) == 0 {
                    return Err(Error::DuplicateSlope {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        Ok(MoveSet { moves })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let moves = pairs
            .iter()
            .map(|&(c, d)| BasicMove::new(c, d))
            .collect::<Result<Vec<_>>>()?;
        MoveSet::new(moves)
    }

    pub fn moves(&self) -> &[BasicMove] {
        &self.moves
    }

    pub fn r(&self) -> usize {
        self.moves.len()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        self.moves.iter().map(slope_of).collect()
    }

    /// Named pieces accepted wherever a move-set string is expected.
    pub fn named(name: &str) -> Option<MoveSet> {
        let pairs: &[(i64, i64)] = match name {
            "rook" => &[(1, 0), (0, 1)],
            "bishop" => &[(1, 1), (1, -1)],
            "queen" => &[(1, 0), (0, 1), (1, 1), (1, -1)],
            "nightrider" => &[(1, 2), (2, 1), (1, -2), (2, -1)],
            "semiqueen" => &[(1, 0), (0, 1), (1, 1)],
            "trident" => &[(0, 1), (1, 1), (1, -1)],
            "triangular-rook" => &[(1, 0), (0, 1), (1, -1)],
            _ => return None,
        };
        MoveSet::from_pairs(pairs).ok()
    }

    /// Move set in the grammar `c,d;c,d;…`, or a named piece.
    pub fn parse(s: &str) -> Result<MoveSet> {
        if let Some(ms) = MoveSet::named(s.trim()) {
            return Ok(ms);
        }
        let mut pairs = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (c, d) = part
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected c,d but got {part:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
            };
            pairs.push((parse(c)?, parse(d)?));
        }
        MoveSet::from_pairs(&pairs)
    }
}

impl FromStr for MoveSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveSet::parse(s)
    }
}

impl fmt::Display for MoveSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point::new(rat(x), rat(y))
    }

    pub fn origin() -> Point {
        Point::int(0, 0)
    }

    pub fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    /// Parses `"x,y"` with rational coordinates.
    pub fn parse(s: &str) -> Result<Point> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected x,y but got {s:?}")))?;
        Ok(Point::new(parse_rational(x)?, parse_rational(y)?))
    }
}

impl serde::Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Point::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Side {
    Left,
    Right,
    On,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::On => Side::On,
        }
    }

    fn from_sign(v: &Rational) -> Side {
        if v.is_positive() {
            Side::Left
        } else if v.is_negative() {
            Side::Right
        } else {
            Side::On
        }
    }
}

/// A line through `anchor`, oriented along `direction`. Left is the
/// counterclockwise side of the direction vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedLine {
    pub anchor: Point,
    pub direction: BasicMove,
}

/// Canonical form of the underlying unoriented line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineKey {
    c: i64,
    d: i64,
    offset: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Point(Point),
    Parallel,
    Identical,
}

impl OrientedLine {
    pub fn new(anchor: Point, direction: BasicMove) -> OrientedLine {
        OrientedLine { anchor, direction }
    }

    /// Cross product `direction × (p − anchor)`.
    fn cross_to(&self, p: &Point) -> Rational {
        let (dx, dy) = p.sub(&self.anchor);
        dy * rat(self.direction.c) - dx * rat(self.direction.d)
    }

    pub fn side_of(&self, p: &Point) -> Side {
        Side::from_sign(&self.cross_to(p))
    }

    pub fn is_vertical(&self) -> bool {
        self.direction.c == 0
    }

    /// `d·x − c·y` evaluated at the anchor, for the unoriented direction.
    pub fn key(&self) -> LineKey {
        let u = self.direction.unoriented();
        let offset = &self.anchor.x * rat(u.d) - &self.anchor.y * rat(u.c);
        LineKey { c: u.c, d: u.d, offset }
    }

    /// y-coordinate of the line at abscissa `x`; `None` for vertical lines.
    pub fn y_at(&self, x: &Rational) -> Option<Rational> {
        if self.is_vertical() {
            return None;
        }
        let slope = Rational::new(BigInt::from(self.direction.d), BigInt::from(self.direction.c));
        Some(&self.anchor.y + slope * (x - &self.anchor.x))
    }

    pub fn intersect(&self, other: &OrientedLine) -> Intersection {
        intersect(self, other)
    }
}

pub fn side_of(line: &OrientedLine, p: &Point) -> Side {
    line.side_of(p)
}

pub fn intersect(a: &OrientedLine, b: &OrientedLine) -> Intersection {
    // a: d1·x − c1·y = e1, b: d2·x − c2·y = e2
    let (c1, d1) = (rat(a.direction.c), rat(a.direction.d));
    let (c2, d2) = (rat(b.direction.c), rat(b.direction.d));
    let e1 = &d1 * &a.anchor.x - &c1 * &a.anchor.y;
    let e2 = &d2 * &b.anchor.x - &c2 * &b.anchor.y;
    let det = &d1 * -&c2 + &d2 * &c1;
    if det.is_zero() {
        return if a.side_of(&b.anchor) == Side::On {
            Intersection::Identical
        } else {
            Intersection::Parallel
        };
    }
    let x = (&e1 * -&c2 + &e2 * &c1) / &det;
    let y = (&d1 * &e2 - &d2 * &e1) / &det;
    Intersection::Point(Point::new(x, y))
}

/// A finite set of pairwise distinct oriented lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<OrientedLine>,
}

impl LineArrangement {
    pub fn new(lines: Vec<OrientedLine>) -> Result<Self> {
        let mut seen: HashMap<LineKey, usize> = HashMap::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            if let Some(&j) = seen.get(&l.key()) {
                return Err(Error::DuplicateLine { first: j, second: i });
            }
            seen.insert(l.key(), i);
        }
        Ok(LineArrangement { lines })
    }

    /// Builds an arrangement, silently dropping lines equal to earlier ones.
    pub fn dedup(lines: impl IntoIterator<Item = OrientedLine>) -> Self {
        let mut seen = std::collections::HashSet::new();
        let lines = lines.into_iter().filter(|l| seen.insert(l.key())).collect();
        LineArrangement { lines }
    }

    /// The move lines of every piece, piece-major.
    pub fn move_lines(ms: &MoveSet, pieces: &[Point]) -> Result<Self> {
        let lines = pieces
            .iter()
            .flat_map(|p| ms.moves().iter().map(move |m| OrientedLine::new(p.clone(), *m)))
            .collect();
        LineArrangement::new(lines)
    }

    pub fn lines(&self) -> &[OrientedLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Intersection points with the number of lines through each.
    pub fn vertices(&self) -> BTreeMap<Point, usize> {
        let mut pairs: BTreeMap<Point, usize> = BTreeMap::new();
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                if let Intersection::Point(p) = intersect(a, b) {
                    *pairs.entry(p).or_default() += 1;
                }
            }
        }
        // a point where m lines meet is produced by m(m−1)/2 pairs
        pairs
            .into_iter()
            .map(|(p, n_pairs)| {
                let mut m = 2;
                while m * (m - 1) / 2 < n_pairs {
                    m += 1;
                }
                (p, m)
            })
            .collect()
    }

    /// Number of regions of the arrangement in the whole plane, from the
    /// multiplicities of its intersection points.
    pub fn steiner_count(&self) -> u64 {
        let k = self.lines.len() as u64;
        let excess: u64 = self.vertices().values().map(|&m| m as u64 - 1).sum();
        1 + k + excess
    }

    pub fn sign_vector(&self, p: &Point) -> Vec<Side> {
        self.lines.iter().map(|l| l.side_of(p)).collect()
    }

    /// One interior point per region, found by slab sampling.
    pub fn region_representatives(&self) -> Vec<Point> {
        self.region_samples(1)
            .into_iter()
            .map(|mut v| v.swap_remove(0))
            .collect()
    }

    /// Up to `per_region` distinct interior points per region. Every region
    /// gets at least one point.
    pub fn region_samples(&self, per_region: usize) -> Vec<Vec<Point>> {
        let per_region = per_region.max(1);
        let mut breaks: Vec<Rational> = Vec::new();
        for (i, a) in self.lines.iter().enumerate() {
            if a.is_vertical() {
                breaks.push(a.anchor.x.clone());
            }
            for b in &self.lines[i + 1..] {
                if let Intersection::Point(p) = intersect(a, b) {
                    breaks.push(p.x);
                }
            }
        }
        breaks.sort();
        breaks.dedup();

        let mut index: HashMap<Vec<Side>, usize> = HashMap::new();
        let mut regions: Vec<Vec<Point>> = Vec::new();
        for x in sample_between(&breaks, per_region) {
            let mut ys: Vec<Rational> = self.lines.iter().filter_map(|l| l.y_at(&x)).collect();
            ys.sort();
            ys.dedup();
            for y in sample_between(&ys, per_region) {
                let p = Point::new(x.clone(), y);
                let sv = self.sign_vector(&p);
                debug_assert!(!sv.contains(&Side::On));
                match index.get(&sv) {
                    Some(&i) => {
                        if regions[i].len() < per_region {
                            regions[i].push(p);
                        }
                    }
                    None => {
                        index.insert(sv, regions.len());
                        regions.push(vec![p]);
                    }
                }
            }
        }
        regions
    }
}

/// Values strictly between consecutive entries of the sorted list and
/// beyond both ends, `per_gap` of them per gap.
fn sample_between(sorted: &[Rational], per_gap: usize) -> Vec<Rational> {
    if sorted.is_empty() {
        return (0..per_gap as i64).map(rat).collect();
    }
    let mut out = Vec::with_capacity((sorted.len() + 1) * per_gap);
    let denom = rat(per_gap as i64 + 1);
    for j in (1..=per_gap as i64).rev() {
        out.push(&sorted[0] - rat(j));
    }
    for w in sorted.windows(2) {
        let step = (&w[1] - &w[0]) / &denom;
        for j in 1..=per_gap as i64 {
            out.push(&w[0] + &step * rat(j));
        }
    }
    let last = &sorted[sorted.len() - 1];
    for j in 1..=per_gap as i64 {
        out.push(last + rat(j));
    }
    out
}

/// A projective transformation of the plane in homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    m: [[Rational; 3]; 3],
}

impl ProjectiveMap {
    pub fn new(m: [[Rational; 3]; 3]) -> Result<Self> {
        let det = &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
        if det.is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(ProjectiveMap { m })
    }

    pub fn identity() -> Self {
        ProjectiveMap::affine([[rat(1), rat(0)], [rat(0), rat(1)]], [rat(0), rat(0)]).expect("identity is invertible")
    }

    /// `p ↦ A·p + t`.
    pub fn affine(a: [[Rational; 2]; 2], t: [Rational; 2]) -> Result<Self> {
        let [[a00, a01], [a10, a11]] = a;
        let [t0, t1] = t;
        ProjectiveMap::new([[a00, a01, t0], [a10, a11, t1], [rat(0), rat(0), rat(1)]])
    }

    /// A linear map sending the three directions of slopes `from` to
    /// directions of slopes `to`, in order.
    pub fn between_slopes(from: [&Slope; 3], to: [&Slope; 3]) -> Result<Self> {
        let dir = |s: &Slope| match s {
            Slope::Infinite => (rat(0), rat(1)),
            Slope::Finite(v) => (rat(1), v.clone()),
        };
        let (u1, u2, u3) = (dir(from[0]), dir(from[1]), dir(from[2]));
        let (w1, w2, w3) = (dir(to[0]), dir(to[1]), dir(to[2]));
        // u3 = λ1·u1 + λ2·u2 and w3 = μ1·w1 + μ2·w2; then A·u1 = (μ1/λ1)·w1,
        // A·u2 = (μ2/λ2)·w2 sends u3 to a multiple of w3.
        let solve = |a: &(Rational, Rational), b: &(Rational, Rational), v: &(Rational, Rational)| {
            let det = &a.0 * &b.1 - &a.1 * &b.0;
            if det.is_zero() {
                return None;
            }
            let l1 = (&v.0 * &b.1 - &v.1 * &b.0) / &det;
            let l2 = (&a.0 * &v.1 - &a.1 * &v.0) / &det;
            Some((l1, l2))
        };
        let (l1, l2) = solve(&u1, &u2, &u3).ok_or(Error::SingularMap)?;
        let (m1, m2) = solve(&w1, &w2, &w3).ok_or(Error::SingularMap)?;
        if l1.is_zero() || l2.is_zero() || m1.is_zero() || m2.is_zero() {
            return Err(Error::SingularMap);
        }
        let alpha = m1 / l1;
        let beta = m2 / l2;
        // columns of B = [α·w1, β·w2], U = [u1, u2]; A = B·U⁻¹
        let b = [[&alpha * &w1.0, &beta * &w2.0], [&alpha * &w1.1, &beta * &w2.1]];
        let det_u = &u1.0 * &u2.1 - &u2.0 * &u1.1;
        let u_inv = [[&u2.1 / &det_u, -&u2.0 / &det_u], [-&u1.1 / &det_u, &u1.0 / &det_u]];
        let mul = |i: usize, j: usize| &b[i][0] * &u_inv[0][j] + &b[i][1] * &u_inv[1][j];
        ProjectiveMap::affine([[mul(0, 0), mul(0, 1)], [mul(1, 0), mul(1, 1)]], [rat(0), rat(0)])
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    fn apply_homogeneous(&self, v: [&Rational; 3]) -> [Rational; 3] {
        let row = |i: usize| &self.m[i][0] * v[0] + &self.m[i][1] * v[1] + &self.m[i][2] * v[2];
        [row(0), row(1), row(2)]
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        let one = Rational::one();
        let [x, y, w] = self.apply_homogeneous([&p.x, &p.y, &one]);
        if w.is_zero() {
            return Err(Error::PointAtInfinity);
        }
        Ok(Point::new(x / &w, y / w))
    }

    /// Image of a direction, i.e. of a point at infinity. The map must keep
    /// it at infinity so that parallel move lines stay parallel.
    pub fn apply_direction(&self, mv: &BasicMove) -> Result<BasicMove> {
        let zero = Rational::zero();
        let [x, y, w] = self.apply_homogeneous([&rat(mv.c), &rat(mv.d), &zero]);
        if !w.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "direction {mv} is not sent to a direction"
            )));
        }
        let scale = x.denom().lcm(y.denom());
        let to_i64 = |v: Rational| {
            (v * Rational::from_integer(scale.clone()))
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument("direction image overflows i64".into()))
        };
        BasicMove::new(to_i64(x)?, to_i64(y)?)
    }

    pub fn apply_moveset(&self, ms: &MoveSet) -> Result<MoveSet> {
        let moves = ms
            .moves()
            .iter()
            .map(|m| self.apply_direction(m))
            .collect::<Result<Vec<_>>>()?;
        MoveSet::new(moves)
    }

    pub fn apply_line(&self, line: &OrientedLine) -> Result<OrientedLine> {
        Ok(OrientedLine::new(
            self.apply(&line.anchor)?,
            self.apply_direction(&line.direction)?,
        ))
    }
}

pub fn apply_projective(map: &ProjectiveMap, p: &Point) -> Result<Point> {
    map.apply(p)
}

pub fn apply_projective_moveset(map: &ProjectiveMap, ms: &MoveSet) -> Result<MoveSet> {
    map.apply_moveset(ms)
}

/// Angular order of nonzero integer vectors, starting at the positive x-axis
/// and increasing counterclockwise.
pub(crate) fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |v: (i64, i64)| if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&cross)
    })
}
