//! Closed forms, the table of known type counts, and quasipolynomial fitting.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitefield::interpolate;
use crate::signature::factorial;

/// Unlabelled types of three `r`-move riders: `r(r² + 3r − 1)/3`.
pub fn t3_closed_form(r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let numer = r * (r * r + 3 * r - 1);
    if !numer.is_multiple_of(3) {
        return Err(Error::InexactDivision {
            value: numer.to_string(),
            divisor: "3".into(),
        });
    }
    Ok(numer / 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Annotation {
    /// Proven value.
    Exact,
    /// Obtained from an empirical quasipolynomial.
    Empirical,
    /// Empirical and computed for queens only; may depend on the piece.
    QueenOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownTypes {
    pub value: u64,
    pub annotation: Annotation,
}

/// Unlabelled type counts by `(q, r)` for `q, r ∈ 1..=6`; `None` marks the
/// unknown cells.
const GOLDEN: [[Option<(u64, Annotation)>; 6]; 6] = {
    use Annotation::*;
    [
        [
            Some((1, Exact)),
            Some((1, Exact)),
            Some((1, Exact)),
            Some((1, Exact)),
            Some((1, Exact)),
            Some((1, Exact)),
        ],
        [
            Some((1, Exact)),
            Some((2, Exact)),
            Some((3, Exact)),
            Some((4, Exact)),
            Some((5, Exact)),
            Some((6, Exact)),
        ],
        [
            Some((1, Exact)),
            Some((6, Exact)),
            Some((17, Exact)),
            Some((36, Exact)),
            Some((65, Exact)),
            Some((106, Exact)),
        ],
        [
            Some((1, Exact)),
            Some((24, Exact)),
            Some((151, Empirical)),
            Some((574, QueenOnly)),
            None,
            None,
        ],
        [
            Some((1, Exact)),
            Some((120, Exact)),
            Some((1899, Empirical)),
            Some((14206, QueenOnly)),
            None,
            None,
        ],
        [
            Some((1, Exact)),
            Some((720, Exact)),
            Some((31709, Empirical)),
            Some((501552, QueenOnly)),
            None,
            None,
        ],
    ]
};

pub fn known_types(q: usize, r: usize) -> Option<KnownTypes> {
    if q == 0 || r == 0 || q > 6 || r > 6 {
        return None;
    }
    GOLDEN[q - 1][r - 1].map(|(value, annotation)| KnownTypes { value, annotation })
}

/// All entries of the table, `(q, r, entry)`.
pub fn golden_table() -> Vec<(usize, usize, Option<KnownTypes>)> {
    (1..=6)
        .flat_map(|q| (1..=6).map(move |r| (q, r, known_types(q, r))))
        .collect()
}

/// Cyclically repeating polynomial constituents, coefficients constant term
/// first. Constituent `i` applies to `n ≡ i (mod period)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPoly {
    pub period: usize,
    pub degree: usize,
    #[serde(with = "rational_lists")]
    pub constituents: Vec<Vec<BigRational>>,
}

impl QuasiPoly {
    pub fn eval(&self, n: i64) -> BigRational {
        eval_quasipoly(self, n)
    }
}

pub fn fit_quasipoly(data: &[(i64, BigInt)], period: usize, degree: usize) -> Result<QuasiPoly> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let mut classes: BTreeMap<i64, Vec<(i64, &BigInt)>> = BTreeMap::new();
    for (n, v) in data {
        classes.entry(n.rem_euclid(period as i64)).or_default().push((*n, v));
    }
    let mut constituents = Vec::with_capacity(period);
    for residue in 0..period as i64 {
        let pts = classes.get(&residue).map(Vec::as_slice).unwrap_or(&[]);
        if pts.len() < degree + 1 {
            return Err(Error::InsufficientData {
                residue,
                have: pts.len(),
                need: degree + 1,
            });
        }
        let (fit, check) = pts.split_at(degree + 1);
        let xs: Vec<BigRational> = fit
            .iter()
            .map(|(n, _)| BigRational::from_integer(BigInt::from(*n)))
            .collect();
        let ys: Vec<BigRational> = fit
            .iter()
            .map(|(_, v)| BigRational::from_integer((*v).clone()))
            .collect();
        let coeffs = interpolate(&xs, &ys);
        for (n, v) in check {
            let predicted = eval_poly(&coeffs, *n);
            let residual = BigRational::from_integer((*v).clone()) - predicted;
            if !residual.is_zero() {
                return Err(Error::InconsistentData {
                    n: *n,
                    residual: residual.to_string(),
                });
            }
        }
        constituents.push(coeffs);
    }
    Ok(QuasiPoly {
        period,
        degree,
        constituents,
    })
}

fn eval_poly(coeffs: &[BigRational], n: i64) -> BigRational {
    let t = BigRational::from_integer(BigInt::from(n));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &t + c)
}

/// Evaluates the constituent of `n mod period`; for `n = −1` that is the
/// constituent of residue `period − 1`.
pub fn eval_quasipoly(qp: &QuasiPoly, n: i64) -> BigRational {
    let residue = n.rem_euclid(qp.period as i64) as usize;
    eval_poly(&qp.constituents[residue], n)
}

/// Smallest period in `1..=max_period` whose fit leaves at least one
/// validating point in every residue class.
pub fn find_period(data: &[(i64, BigInt)], degree: usize, max_period: usize) -> Option<QuasiPoly> {
    (1..=max_period).find_map(|period| {
        let mut sizes = vec![0usize; period];
        for (n, _) in data {
            sizes[n.rem_euclid(period as i64) as usize] += 1;
        }
        if sizes.iter().any(|&s| s < degree + 2) {
            return None;
        }
        fit_quasipoly(data, period, degree).ok()
    })
}

/// Labelled and unlabelled type counts from labelled placement counts
/// `o(q; n)`, by fitting a degree-`2q` quasipolynomial and evaluating it at
/// `n = −1`.
pub fn types_from_counts(data: &[(i64, BigInt)], period: usize, q: usize) -> Result<(BigInt, BigInt)> {
    let qp = fit_quasipoly(data, period, 2 * q)?;
    let value = eval_quasipoly(&qp, -1);
    if !value.is_integer() || value.is_negative() {
        return Err(Error::InexactDivision {
            value: value.to_string(),
            divisor: "1".into(),
        });
    }
    let labelled = value.to_integer();
    let qf = BigInt::from(factorial(q));
    let (unlabelled, rem) = labelled.div_rem(&qf);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            value: labelled.to_string(),
            divisor: qf.to_string(),
        });
    }
    Ok((labelled, unlabelled))
}

/// Parses an OEIS b-file: one `index value` pair per line, `#` comments and
/// blank lines ignored.
pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {trimmed:?}", lineno + 1));
        let mut fields = trimmed.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected `index value`"));
        };
        let n: i64 = n.parse().map_err(|_| err("bad index"))?;
        let v: BigInt = v.parse().map_err(|_| err("bad value"))?;
        if !seen.insert(n) {
            return Err(err("duplicate index"));
        }
        out.push((n, v));
    }
    Ok(out)
}

mod rational_lists {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<String>> = v.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
        s.collect_seq(strings)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|c| {
                c.iter()
                    .map(|s| crate::geometry::parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
