use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Census, CensusMeta, Engine};
use crate::error::{Error, Result};
use crate::geometry::MoveSet;
use crate::signature::{labelled_type_int, LabelledType, RegionNumbering};

const HALF_WIDTH: i64 = 1 << 30;
const CHUNK: u64 = 4096;

/// Types of uniformly random placements in a large box; attacking samples
/// are skipped. Every type found is a true type, so the result is a subset
/// of the exact census. Chunk `i` draws from stream `i` of the seeded
/// generator, so the result does not depend on the thread count.
pub fn random_census(ms: &MoveSet, q: usize, samples: u64, seed: u64) -> Result<Census> {
    if q == 0 || samples == 0 {
        return Err(Error::InvalidArgument("need q ≥ 1 and samples ≥ 1".into()));
    }
    let numbering = RegionNumbering::new(ms);
    let chunks = samples.div_ceil(CHUNK);
    let (found, accepted) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let len = CHUNK.min(samples - chunk * CHUNK);
            let mut seen: HashSet<LabelledType> = HashSet::new();
            let mut accepted = 0u64;
            let mut pts = vec![(0i64, 0i64); q];
            for _ in 0..len {
                for p in pts.iter_mut() {
                    *p = (
                        rng.gen_range(-HALF_WIDTH..=HALF_WIDTH),
                        rng.gen_range(-HALF_WIDTH..=HALF_WIDTH),
                    );
                }
                if let Some(t) = labelled_type_int(&numbering, &pts) {
                    accepted += 1;
                    seen.insert(t);
                }
            }
            (seen, accepted)
        })
        .reduce(
            || (HashSet::new(), 0),
            |(mut a, na), (b, nb)| {
                a.extend(b);
                (a, na + nb)
            },
        );
    let meta = CensusMeta {
        samples: Some(samples),
        accepted_samples: Some(accepted),
        seed: Some(seed),
        ..CensusMeta::default()
    };
    Ok(Census::from_labelled(Engine::Random, ms, q, found, meta, false))
}
