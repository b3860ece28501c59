use std::collections::HashSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Census, CensusMeta, Engine};
use crate::boards::{Board, LatticeBoard};
use crate::error::{Error, Result};
use crate::finitefield::types_ff;
use crate::formulas::t3_closed_form;
use crate::geometry::MoveSet;
use crate::signature::{antipode, factorial, LabelledType, RegionNumbering};

/// Attack bitsets and pairwise region indices over the cells of a lattice
/// board. Cell `a` attacks itself.
struct Grid {
    cells: usize,
    words: usize,
    attack: Vec<u64>,
    region: Vec<u8>,
}

impl Grid {
    fn new(ms: &MoveSet, lb: &LatticeBoard, with_regions: bool) -> Self {
        let cells = lb.cells.len();
        let words = cells.div_ceil(64).max(1);
        let numbering = RegionNumbering::new(ms);
        let mut attack = vec![0u64; cells * words];
        let mut region = if with_regions {
            vec![0u8; cells * cells]
        } else {
            Vec::new()
        };
        for (a, &(ax, ay)) in lb.cells.iter().enumerate() {
            for (b, &(bx, by)) in lb.cells.iter().enumerate() {
                let (dx, dy) = (bx - ax, by - ay);
                let hit = a == b || ms.moves().iter().any(|m| m.cross_int(dx, dy) == 0);
                if hit {
                    attack[a * words + b / 64] |= 1 << (b % 64);
                } else if with_regions {
                    region[a * cells + b] = numbering.region_of(dx, dy).expect("off every move line");
                }
            }
        }
        Grid {
            cells,
            words,
            attack,
            region,
        }
    }

    fn attack_row(&self, a: usize) -> &[u64] {
        &self.attack[a * self.words..(a + 1) * self.words]
    }

    /// Cells after `a` that `a` does not attack.
    fn initial(&self, a: usize) -> Vec<u64> {
        let mut avail: Vec<u64> = self.attack_row(a).iter().map(|w| !w).collect();
        clear_through(&mut avail, a);
        clear_tail(&mut avail, self.cells);
        avail
    }
}

fn clear_through(bits: &mut [u64], a: usize) {
    for w in bits.iter_mut().take(a / 64) {
        *w = 0;
    }
    let w = a / 64;
    let keep = if a % 64 == 63 { 0 } else { !0u64 << (a % 64 + 1) };
    bits[w] &= keep;
}

fn clear_tail(bits: &mut [u64], cells: usize) {
    let w = cells / 64;
    if w < bits.len() {
        bits[w] &= (1u64 << (cells % 64)) - 1;
        for x in bits.iter_mut().skip(w + 1) {
            *x = 0;
        }
    }
}

fn popcount(bits: &[u64]) -> u64 {
    bits.iter().map(|w| w.count_ones() as u64).sum()
}

fn for_each_bit(bits: &[u64], mut f: impl FnMut(usize)) {
    for (wi, &w) in bits.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            f(wi * 64 + b);
            w &= w - 1;
        }
    }
}

/// Unordered placements of `remaining` more pieces among `avail` (cells
/// above the last placed one and unattacked by any placed piece).
fn count_sets(g: &Grid, avail: &[u64], remaining: usize) -> u128 {
    if remaining == 1 {
        return popcount(avail) as u128;
    }
    let mut total = 0u128;
    let mut next = vec![0u64; g.words];
    for_each_bit(avail, |c| {
        for (i, w) in next.iter_mut().enumerate() {
            *w = avail[i] & !g.attack_row(c)[i];
        }
        clear_through(&mut next, c);
        total += count_sets(g, &next, remaining - 1);
    });
    total
}

fn visit_sets(g: &Grid, avail: &[u64], chosen: &mut Vec<usize>, remaining: usize, f: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        f(chosen);
        return;
    }
    let mut next = vec![0u64; g.words];
    for_each_bit(avail, |c| {
        chosen.push(c);
        if remaining > 1 {
            for (i, w) in next.iter_mut().enumerate() {
                *w = avail[i] & !g.attack_row(c)[i];
            }
            clear_through(&mut next, c);
        }
        visit_sets(g, &next, chosen, remaining - 1, f);
        chosen.pop();
    });
}

/// Labelled and unlabelled numbers of nonattacking placements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementCount {
    pub n: u64,
    pub labelled: u128,
    pub unlabelled: u128,
}

pub fn count_nonattacking(ms: &MoveSet, board: &Board, n: u64, q: usize) -> Result<PlacementCount> {
    if q == 0 {
        return Err(Error::InvalidArgument("q must be at least 1".into()));
    }
    let lb = board.lattice_points(n)?;
    let g = Grid::new(ms, &lb, false);
    let unlabelled: u128 = if q == 1 {
        g.cells as u128
    } else {
        (0..g.cells)
            .into_par_iter()
            .map(|a| count_sets(&g, &g.initial(a), q - 1))
            .sum()
    };
    Ok(PlacementCount {
        n,
        labelled: unlabelled * factorial(q) as u128,
        unlabelled,
    })
}

const MAX_GRID_Q: usize = 6;

fn pack(g: &Grid, chosen: &[usize]) -> u128 {
    let mut key = 0u128;
    for (i, &a) in chosen.iter().enumerate() {
        for &b in &chosen[i + 1..] {
            key = (key << 8) | g.region[a * g.cells + b] as u128;
        }
    }
    key
}

fn unpack(key: u128, q: usize, r: usize) -> LabelledType {
    let mut entries = vec![0u8; q * q];
    let mut shift = 8 * (q * (q - 1) / 2);
    for i in 0..q {
        for k in i + 1..q {
            shift -= 8;
            let v = (key >> shift) as u8;
            entries[i * q + k] = v;
            entries[k * q + i] = antipode(v, r);
        }
    }
    LabelledType::from_matrix(q, r, entries).expect("packed from a valid placement")
}

/// Distinct types among all nonattacking placements on the order-`n`
/// lattice board. A lower bound for the true census.
pub fn grid_census(ms: &MoveSet, board: &Board, n: u64, q: usize) -> Result<Census> {
    if q == 0 || q > MAX_GRID_Q {
        return Err(Error::Unsupported(format!("grid census needs 1 ≤ q ≤ {MAX_GRID_Q}")));
    }
    let lb = board.lattice_points(n)?;
    let g = Grid::new(ms, &lb, true);
    let meta = CensusMeta {
        board: Some(board.to_string()),
        n: Some(n),
        ..CensusMeta::default()
    };
    if q == 1 {
        let types = if g.cells > 0 {
            vec![LabelledType::trivial(ms.r())]
        } else {
            vec![]
        };
        return Ok(Census::from_labelled(Engine::Grid, ms, q, types, meta, false));
    }
    let keys: HashSet<u128> = (0..g.cells)
        .into_par_iter()
        .map(|a| {
            let mut seen = HashSet::new();
            let mut chosen = vec![a];
            visit_sets(&g, &g.initial(a), &mut chosen, q - 1, &mut |c| {
                seen.insert(pack(&g, c));
            });
            seen
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let labelled = keys.into_iter().map(|k| unpack(k, q, ms.r()));
    Ok(Census::from_labelled(Engine::Grid, ms, q, labelled, meta, false))
}

/// An independent value for the census size: the closed forms for `q ≤ 3`,
/// the finite-field count otherwise.
pub fn corroborate(ms: &MoveSet, q: usize) -> Result<(u64, &'static str)> {
    let r = ms.r() as u64;
    match q {
        0 => Err(Error::InvalidArgument("q must be at least 1".into())),
        1 => Ok((1, "closed-form")),
        2 => Ok((r, "closed-form")),
        3 => Ok((t3_closed_form(r)?, "closed-form")),
        _ => {
            let (_, unlabelled) = types_ff(ms, q)?;
            let v = unlabelled
                .to_u64()
                .ok_or_else(|| Error::Unsupported("type count exceeds u64".into()))?;
            Ok((v, "finite-field"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationReport {
    /// `(n, census size)` for every order tried.
    pub sizes: Vec<(u64, usize)>,
    /// First order after which the census stopped growing.
    pub stabilized_at: Option<u64>,
    pub window: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilizeError {
    Engine(Error),
    Unstable {
        partial: Box<Census>,
        report: StabilizationReport,
    },
}

impl std::fmt::Display for StabilizeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StabilizeError::Engine(e) => e.fmt(f),
            StabilizeError::Unstable { partial, report } => write!(
                f,
                "census still growing at n={} ({} types)",
                report.sizes.last().map(|s| s.0).unwrap_or(0),
                partial.size
            ),
        }
    }
}

impl std::error::Error for StabilizeError {}

impl From<Error> for StabilizeError {
    fn from(e: Error) -> Self {
        StabilizeError::Engine(e)
    }
}

/// Grid censuses for `n = n_start, n_start + 1, …` until the type set is
/// unchanged for `window` consecutive orders. The result is flagged exact
/// only when [`corroborate`] agrees with its size.
pub fn stabilized_census(
    ms: &MoveSet,
    board: &Board,
    q: usize,
    n_start: u64,
    n_max: u64,
    window: u64,
) -> std::result::Result<(Census, StabilizationReport), StabilizeError> {
    if n_start == 0 || n_start > n_max || window == 0 {
        return Err(Error::InvalidArgument("need 1 ≤ n_start ≤ n_max and window ≥ 1".into()).into());
    }
    let mut report = StabilizationReport {
        sizes: Vec::new(),
        stabilized_at: None,
        window,
    };
    let mut prev: Option<Census> = None;
    let mut unchanged = 0;
    let mut since = n_start;
    for n in n_start..=n_max {
        let census = grid_census(ms, board, n, q)?;
        report.sizes.push((n, census.size));
        match &prev {
            // an empty census only means the board is still too small
            Some(p) if !census.is_empty() && p.same_types(&census) => unchanged += 1,
            _ => {
                unchanged = 0;
                since = n;
            }
        }
        prev = Some(census);
        if unchanged >= window {
            report.stabilized_at = Some(since);
            let mut census = prev.take().expect("just set");
            let (expected, source) = corroborate(ms, q)?;
            if expected == census.size as u64 {
                census.exact = true;
                census.meta.corroborated_by = Some(source.to_string());
            }
            return Ok((census, report));
        }
    }
    Err(StabilizeError::Unstable {
        partial: Box::new(prev.expect("at least one order tried")),
        report,
    })
}
