//! Exact labelled type counts from the configuration hyperplane arrangement.
//!
//! Piece `k` attacks piece `i` along move `(c, d)` exactly when
//! `d·(x_k − x_i) − c·(y_k − y_i) = 0`. These hyperplanes live in `2q`
//! dimensions and their regions are the labelled types. For a prime of good
//! reduction, the number of points of `F_p^{2q}` off every hyperplane equals
//! the characteristic polynomial at `p`; interpolating over enough primes and
//! evaluating at −1 gives the region count.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::MoveSet;
use crate::signature::factorial;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Whether the move lines keep their distinct slopes modulo `p`.
pub fn valid_prime(ms: &MoveSet, p: u64) -> bool {
    if !is_prime(p) {
        return false;
    }
    let p = p as i128;
    let moves = ms.moves();
    moves
        .iter()
        .all(|m| (m.c() as i128).rem_euclid(p) != 0 || (m.d() as i128).rem_euclid(p) != 0)
        && moves
            .iter()
            .enumerate()
            .all(|(j, a)| moves[j + 1..].iter().all(|b| a.cross(b).rem_euclid(p) != 0))
}

/// Number of `q`-tuples of points of `F_p²` with no two on a common move line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCount {
    pub p: u64,
    #[serde(with = "decimal")]
    pub count: BigUint,
}

/// Arithmetic modulo a small prime, with a table of inverses.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    inv: Vec<u32>,
}

impl Field {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > 1 << 16 {
            return Err(Error::InvalidArgument(format!("{p} is not a usable prime")));
        }
        let p32 = p as u32;
        let mut inv = vec![0u32; p as usize];
        for a in 1..p32 {
            inv[a as usize] = pow_mod(a, p32 - 2, p32);
        }
        Ok(Field { p: p32, inv })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % p as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

/// The line `a·x + b·y = e` over `F_p`, normalized so that the first nonzero
/// coefficient of `(a, b)` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpLine {
    pub a: u32,
    pub b: u32,
    pub e: u32,
}

impl FpLine {
    pub fn new(field: &Field, a: i64, b: i64, e: i64) -> Result<Self> {
        let (a, b, e) = (field.reduce(a), field.reduce(b), field.reduce(e));
        let lead = if a != 0 { a } else { b };
        if lead == 0 {
            return Err(Error::InvalidArgument("line has no direction mod p".into()));
        }
        let s = field.inv[lead as usize];
        Ok(FpLine {
            a: field.mul(a, s),
            b: field.mul(b, s),
            e: field.mul(e, s),
        })
    }

    pub fn contains(&self, field: &Field, x: u32, y: u32) -> bool {
        field.add(field.mul(self.a, x), field.mul(self.b, y)) == self.e
    }
}

/// Number of points of `F_p²` on none of `lines`, by inclusion–exclusion over
/// the intersection points rather than by scanning the plane.
pub fn last_level_count(field: &Field, lines: &[FpLine]) -> Result<u64> {
    let mut scratch = Vec::with_capacity(lines.len() * lines.len() / 2);
    for (i, l) in lines.iter().enumerate() {
        if lines[i + 1..].contains(l) {
            return Err(Error::DuplicateLine {
                first: i,
                second: i + 1 + lines[i + 1..].iter().position(|m| m == l).unwrap_or(0),
            });
        }
    }
    Ok(uncovered(field, lines, &mut scratch))
}

fn uncovered(field: &Field, lines: &[FpLine], points: &mut Vec<u64>) -> u64 {
    let p = field.p as u64;
    points.clear();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            let det = field.sub(field.mul(l.a, m.b), field.mul(m.a, l.b));
            if det == 0 {
                continue;
            }
            let inv = field.inv[det as usize];
            let x = field.mul(field.sub(field.mul(l.e, m.b), field.mul(m.e, l.b)), inv);
            let y = field.mul(field.sub(field.mul(l.a, m.e), field.mul(m.a, l.e)), inv);
            points.push(x as u64 * p + y as u64);
        }
    }
    points.sort_unstable();
    // a point on m lines shows up m(m−1)/2 times and is overcounted m−1 times
    let mut overcount = 0u64;
    let mut i = 0;
    while i < points.len() {
        let mut j = i;
        while j < points.len() && points[j] == points[i] {
            j += 1;
        }
        let pairs = (j - i) as u64;
        let mut m = 2u64;
        while m * (m - 1) / 2 < pairs {
            m += 1;
        }
        overcount += m - 1;
        i = j;
    }
    p * p - (lines.len() as u64 * p - overcount)
}

/// Move set reduced modulo `p`: for each move, the normalized `(a, b)` of
/// `d·x − c·y`.
struct FpMoves {
    field: Field,
    coeffs: Vec<(u32, u32)>,
}

impl FpMoves {
    fn new(ms: &MoveSet, p: u64) -> Result<Self> {
        let field = Field::new(p)?;
        let coeffs = ms
            .moves()
            .iter()
            .map(|m| FpLine::new(&field, m.d(), -m.c(), 0).map(|l| (l.a, l.b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FpMoves { field, coeffs })
    }

    fn lines_through(&self, x: u32, y: u32, out: &mut Vec<FpLine>) {
        let f = &self.field;
        for &(a, b) in &self.coeffs {
            out.push(FpLine {
                a,
                b,
                e: f.add(f.mul(a, x), f.mul(b, y)),
            });
        }
    }
}

/// Counts the admissible placements of the remaining pieces given the
/// lines through those already placed.
fn count_rest(fm: &FpMoves, lines: &mut Vec<FpLine>, remaining: usize, scratch: &mut Vec<u64>) -> u128 {
    let f = &fm.field;
    if remaining == 1 {
        return uncovered(f, lines, scratch) as u128;
    }
    let p = f.p;
    let r = fm.coeffs.len();
    let mut total = 0u128;
    let mut covered = vec![false; (p * p) as usize];
    for l in lines.iter() {
        // walk the p points of a·x + b·y = e
        if l.b == 0 {
            // a = 1: vertical line x = e
            for y in 0..p {
                covered[(l.e * p + y) as usize] = true;
            }
        } else {
            let inv_b = f.inv[l.b as usize];
            for x in 0..p {
                let y = f.mul(f.sub(l.e, f.mul(l.a, x)), inv_b);
                covered[(x * p + y) as usize] = true;
            }
        }
    }
    for x in 0..p {
        for y in 0..p {
            if covered[(x * p + y) as usize] {
                continue;
            }
            fm.lines_through(x, y, lines);
            total += count_rest(fm, lines, remaining - 1, scratch);
            lines.truncate(lines.len() - r);
        }
    }
    total
}

/// Exact point count of the complement of the configuration arrangement over
/// `F_p`. Piece 1 is fixed at the origin (translations) and piece 2 runs over
/// one representative per line through the origin (scalings); both group
/// actions preserve every attack hyperplane.
pub fn torus_count(ms: &MoveSet, q: usize, p: u64) -> Result<PrimeCount> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    if !valid_prime(ms, p) {
        return Err(Error::InvalidPrime { p });
    }
    if (p as f64).powi(2 * q as i32) >= 1e37 {
        return Err(Error::Unsupported(format!("p^{} exceeds the counting range", 2 * q)));
    }
    let p128 = p as u128;
    let count = if q == 1 {
        p128 * p128
    } else {
        let fm = FpMoves::new(ms, p)?;
        let mut origin_lines = Vec::new();
        fm.lines_through(0, 0, &mut origin_lines);
        let p32 = p as u32;
        // projective directions (1, t) and (0, 1)
        let directions: Vec<(u32, u32)> = (0..p32).map(|t| (1, t)).chain([(0, 1)]).collect();
        let per_direction: u128 = directions
            .par_iter()
            .filter(|&&(x, y)| !origin_lines.iter().any(|l| l.contains(&fm.field, x, y)))
            .map(|&(x, y)| {
                let mut lines = origin_lines.clone();
                fm.lines_through(x, y, &mut lines);
                let mut scratch = Vec::new();
                if q == 2 {
                    1
                } else {
                    count_rest(&fm, &mut lines, q - 2, &mut scratch)
                }
            })
            .sum();
        p128 * p128 * (p128 - 1) * per_direction
    };
    Ok(PrimeCount {
        p,
        count: BigUint::from(count),
    })
}

/// Characteristic polynomial of the configuration arrangement, coefficients
/// from the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPoly {
    #[serde(with = "decimal_vec")]
    pub coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

/// Lagrange interpolation through the first `2q+1` counts; the rest validate.
pub fn char_poly(q: usize, counts: &[PrimeCount]) -> Result<CharPoly> {
    let degree = 2 * q;
    if counts.len() < degree + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} prime counts, got {}",
            degree + 1,
            counts.len()
        )));
    }
    for (i, a) in counts.iter().enumerate() {
        if counts[i + 1..].iter().any(|b| b.p == a.p) {
            return Err(Error::InvalidArgument(format!("prime {} supplied twice", a.p)));
        }
    }
    let (fit, check) = counts.split_at(degree + 1);
    let xs: Vec<BigRational> = fit
        .iter()
        .map(|c| BigRational::from_integer(BigInt::from(c.p)))
        .collect();
    let ys: Vec<BigRational> = fit
        .iter()
        .map(|c| BigRational::from_integer(BigInt::from(c.count.clone())))
        .collect();
    let coeffs = interpolate(&xs, &ys);
    let last_p = fit[degree].p;
    let mut coefficients = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if !c.is_integer() {
            return Err(Error::Interpolation {
                p: last_p,
                reason: format!("non-integer coefficient {c}"),
            });
        }
        coefficients.push(c.to_integer());
    }
    if !coefficients[degree].is_one() {
        return Err(Error::Interpolation {
            p: last_p,
            reason: format!("leading coefficient {} is not 1", coefficients[degree]),
        });
    }
    if !coefficients[0].is_zero() || (degree >= 2 && !coefficients[1].is_zero()) {
        return Err(Error::Interpolation {
            p: last_p,
            reason: "polynomial is not divisible by t²".into(),
        });
    }
    let poly = CharPoly { coefficients };
    for c in check {
        let predicted = poly.eval(&BigInt::from(c.p));
        if predicted != BigInt::from(c.count.clone()) {
            return Err(Error::Interpolation {
                p: c.p,
                reason: format!("predicted {predicted}, counted {}", c.count),
            });
        }
    }
    Ok(poly)
}

/// Coefficients (constant term first) of the polynomial through the points.
pub(crate) fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut result = vec![BigRational::zero(); n];
    for i in 0..n {
        // basis polynomial ∏_{j≠i} (t − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (k, b) in basis.iter().enumerate() {
            result[k] += b * &scale;
        }
    }
    result
}

/// Labelled and unlabelled type counts with the evidence behind them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FfResult {
    pub moves: String,
    pub q: usize,
    pub primes: Vec<u64>,
    pub counts: Vec<PrimeCount>,
    pub char_poly: CharPoly,
    #[serde(with = "decimal")]
    pub labelled: BigUint,
    #[serde(with = "decimal")]
    pub unlabelled: BigUint,
}

/// Options for [`types_ff_with`].
#[derive(Debug, Clone)]
pub struct FfOptions {
    /// Smallest prime considered.
    pub prime_floor: u64,
    /// Extra primes beyond the `2q+1` needed for interpolation.
    pub validation_primes: usize,
    /// How many times the prime window may shift up after a failed fit.
    pub retries: usize,
}

impl Default for FfOptions {
    fn default() -> Self {
        FfOptions {
            prime_floor: 11,
            validation_primes: 2,
            retries: 8,
        }
    }
}

pub fn types_ff(ms: &MoveSet, q: usize) -> Result<(BigUint, BigUint)> {
    let res = types_ff_with(ms, q, &FfOptions::default(), &mut |ms, q, p| torus_count(ms, q, p))?;
    Ok((res.labelled, res.unlabelled))
}

/// Runs the finite-field pipeline. `count` supplies per-prime counts, so a
/// caller can serve them from a cache.
pub fn types_ff_with(
    ms: &MoveSet,
    q: usize,
    opts: &FfOptions,
    count: &mut dyn FnMut(&MoveSet, usize, u64) -> Result<PrimeCount>,
) -> Result<FfResult> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let needed = 2 * q + 1 + opts.validation_primes;
    let mut primes: Vec<u64> = Vec::with_capacity(needed);
    let mut candidate = opts.prime_floor.max(2);
    while primes.len() < needed {
        if valid_prime(ms, candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    let mut counts: Vec<PrimeCount> = primes.iter().map(|&p| count(ms, q, p)).collect::<Result<Vec<_>>>()?;
    let mut attempt = 0;
    let poly = loop {
        match char_poly(q, &counts) {
            Ok(poly) => break poly,
            Err(e) if attempt < opts.retries => {
                // drop the smallest prime, append the next valid one
                attempt += 1;
                let _ = e;
                primes.remove(0);
                counts.remove(0);
                while !valid_prime(ms, candidate) {
                    candidate += 1;
                }
                primes.push(candidate);
                counts.push(count(ms, q, candidate)?);
                candidate += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let at_minus_one = poly.eval(&BigInt::from(-1));
    if !at_minus_one.is_positive() {
        return Err(Error::Interpolation {
            p: primes[0],
            reason: format!("χ(−1) = {at_minus_one} is not positive"),
        });
    }
    let labelled = at_minus_one.to_biguint().expect("positive");
    let qf = BigUint::from(factorial(q));
    let (unlabelled, rem) = labelled.div_rem(&qf);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            value: labelled.to_string(),
            divisor: qf.to_string(),
        });
    }
    Ok(FfResult {
        moves: ms.to_string(),
        q,
        primes,
        counts,
        char_poly: poly,
        labelled,
        unlabelled,
    })
}

/// Convenience for small results.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}
