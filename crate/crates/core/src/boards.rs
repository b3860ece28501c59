//! Convex polygonal boards and their lattice points.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::geometry::{rat, Point, Rational};

/// A closed strictly convex polygon, vertices counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    vertices: Vec<Point>,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (ax, ay) = a.sub(o);
    let (bx, by) = b.sub(o);
    ax * by - ay * bx
}

impl Board {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidBoard(format!("{n} vertices, need at least 3")));
        }
        for i in 0..n {
            let turn = cross(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !turn.is_positive() {
                return Err(Error::InvalidBoard(format!(
                    "not strictly convex and counterclockwise at vertex {}",
                    (i + 1) % n + 1
                )));
            }
        }
        // a star polygon also turns left everywhere; its edge directions
        // wind around more than once
        let edge = |i: usize| vertices[(i + 1) % n].sub(&vertices[i]);
        let wraps = (0..n)
            .filter(|&i| direction_cmp(&edge(i), &edge((i + 1) % n)) != Ordering::Less)
            .count();
        if wraps != 1 {
            return Err(Error::InvalidBoard("polygon is not simple".into()));
        }
        Ok(Board { vertices })
    }

    /// The unit square `[0,1]²`; its order-`n` lattice board is `[n]²`.
    pub fn square() -> Board {
        Board::new(vec![
            Point::int(0, 0),
            Point::int(1, 0),
            Point::int(1, 1),
            Point::int(0, 1),
        ])
        .expect("unit square is convex")
    }

    /// The right triangle `(0,0), (1,0), (0,1)`.
    pub fn triangle() -> Board {
        Board::new(vec![Point::int(0, 0), Point::int(1, 0), Point::int(0, 1)]).expect("unit triangle is convex")
    }

    /// `square`, `triangle`, or `poly:x1,y1;x2,y2;…`.
    pub fn parse(s: &str) -> Result<Board> {
        match s.trim() {
            "square" => Ok(Board::square()),
            "triangle" => Ok(Board::triangle()),
            other => {
                let body = other
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::Parse(format!("unknown board {other:?}")))?;
                let vertices = body
                    .split(';')
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(Point::parse)
                    .collect::<Result<Vec<_>>>()?;
                Board::new(vertices)
            }
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Whether `p` is strictly inside `scale · board`.
    pub fn contains_open(&self, scale: u64, p: &Point) -> bool {
        let s = rat(scale as i64);
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = Point::new(&self.vertices[i].x * &s, &self.vertices[i].y * &s);
            let b = Point::new(&self.vertices[(i + 1) % n].x * &s, &self.vertices[(i + 1) % n].y * &s);
            cross(&a, &b, p).is_positive()
        })
    }

    /// The working board of order `n`: integer points strictly inside
    /// `(n+1) · board`, sorted by `(x, y)`.
    pub fn lattice_points(&self, n: u64) -> Result<LatticeBoard> {
        if n == 0 {
            return Err(Error::InvalidArgument("board order must be at least 1".into()));
        }
        let scale = rat(n as i64 + 1);
        let xs = self.vertices.iter().map(|v| &v.x * &scale);
        let ys = self.vertices.iter().map(|v| &v.y * &scale);
        let floor = |v: Rational| v.floor().to_integer();
        let ceil = |v: Rational| v.ceil().to_integer();
        let (x_lo, x_hi) = bounds(xs.clone().map(floor).min(), xs.map(ceil).max())?;
        let (y_lo, y_hi) = bounds(ys.clone().map(floor).min(), ys.map(ceil).max())?;
        let mut cells = Vec::new();
        for x in x_lo..=x_hi {
            for y in y_lo..=y_hi {
                if self.contains_open(n + 1, &Point::int(x, y)) {
                    cells.push((x, y));
                }
            }
        }
        Ok(LatticeBoard {
            board: self.clone(),
            n,
            cells,
        })
    }
}

fn direction_cmp(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let zero = Rational::from_integer(0.into());
    let half = |v: &(Rational, Rational)| {
        if v.1 > zero || (v.1 == zero && v.0 > zero) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        zero.cmp(&cross)
    })
}

fn bounds(lo: Option<BigInt>, hi: Option<BigInt>) -> Result<(i64, i64)> {
    let conv = |v: Option<BigInt>| {
        v.and_then(|v| v.to_i64())
            .ok_or_else(|| Error::InvalidBoard("board too large for lattice enumeration".into()))
    };
    Ok((conv(lo)?, conv(hi)?))
}

pub fn lattice_points(board: &Board, n: u64) -> Result<LatticeBoard> {
    board.lattice_points(n)
}

pub fn contains_open(board: &Board, scale: u64, p: &Point) -> bool {
    board.contains_open(scale, p)
}

impl fmt::Display for Board {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Board::square() {
            return f.write_str("square");
        }
        if *self == Board::triangle() {
            return f.write_str("triangle");
        }
        f.write_str("poly:")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Integer cells of a dilated board.
#[derive(Debug, Clone)]
pub struct LatticeBoard {
    pub board: Board,
    pub n: u64,
    pub cells: Vec<(i64, i64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_n_by_n() {
        let lb = Board::square().lattice_points(3).unwrap();
        let expected: Vec<_> = (1..=3).flat_map(|x| (1..=3).map(move |y| (x, y))).collect();
        assert_eq!(lb.cells, expected);
        assert_eq!(Board::square().lattice_points(1).unwrap().cells, vec![(1, 1)]);
        for n in 1..=50 {
            assert_eq!(Board::square().lattice_points(n).unwrap().cells.len() as u64, n * n);
        }
    }

    #[test]
    fn triangle_interior() {
        let lb = Board::triangle().lattice_points(3).unwrap();
        assert_eq!(lb.cells, vec![(1, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn open_containment() {
        let sq = Board::square();
        assert!(sq.contains_open(4, &Point::int(2, 2)));
        assert!(!sq.contains_open(4, &Point::int(0, 2)));
        assert!(!sq.contains_open(4, &Point::int(5, 1)));
    }

    #[test]
    fn lattice_matches_bounding_box_filter() {
        let board = Board::parse("poly:0,0;3/2,1/3;1,2;-1/2,1").unwrap();
        for n in 1..8 {
            let lb = board.lattice_points(n).unwrap();
            for x in -10..20 {
                for y in -10..20 {
                    let inside = board.contains_open(n + 1, &Point::int(x, y));
                    assert_eq!(inside, lb.cells.contains(&(x, y)));
                }
            }
            let next = board.lattice_points(n + 1).unwrap();
            assert!(lb.cells.len() <= next.cells.len());
        }
    }

    #[test]
    fn degenerate_boards_rejected() {
        assert!(Board::parse("poly:0,0;1,0").is_err());
        assert!(Board::parse("poly:0,0;1,0;2,0").is_err());
        // clockwise
        assert!(Board::parse("poly:0,0;0,1;1,0").is_err());
        // pentagram: every turn is a left turn
        assert!(Board::parse("poly:0,0;3,2;-1,2;2,0;1,3").is_err());
        assert!(Board::parse("hexagon").is_err());
        assert!(Board::square().lattice_points(0).is_err());
    }

    #[test]
    fn named_round_trip() {
        assert_eq!(Board::parse("square").unwrap().to_string(), "square");
        assert_eq!(Board::parse("triangle").unwrap().to_string(), "triangle");
        let b = Board::parse("poly:0,0;2,0;0,3").unwrap();
        assert_eq!(Board::parse(&b.to_string()).unwrap(), b);
    }
}
