//! Sets of combinatorial types, computed by several independent engines.
//!
//! * [`grid_census`] / [`stabilized_census`]: every nonattacking placement on
//!   a lattice board of growing order.
//! * [`geometric_census`]: place pieces one at a time, one point per region of
//!   the arrangement of move lines already present.
//! * [`random_census`]: random placements in a large box.
//! * [`fours_witness`]: searches for a third piece whose exact position within
//!   its region changes the types available to a fourth.

mod geometric;
mod grid;
mod random;
mod witness;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::MoveSet;
use crate::signature::{canonical_unlabelled, LabelledType, UnlabelledType};

pub use geometric::geometric_census;
pub use grid::{
    corroborate, count_nonattacking, grid_census, stabilized_census, PlacementCount, StabilizationReport,
    StabilizeError,
};
pub use random::random_census;
pub use witness::{fours_witness, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Grid,
    Geometric,
    Random,
    Ff,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Grid => "grid",
            Engine::Geometric => "geometric",
            Engine::Random => "random",
            Engine::Ff => "ff",
        })
    }
}

impl std::str::FromStr for Engine {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "grid" => Ok(Engine::Grid),
            "geometric" => Ok(Engine::Geometric),
            "random" => Ok(Engine::Random),
            "ff" => Ok(Engine::Ff),
            other => Err(crate::Error::Parse(format!("unknown engine {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusMeta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub board: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub accepted_samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub refinement: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corroborated_by: Option<String>,
}

/// The distinct unlabelled types found by one engine run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub engine: Engine,
    pub moves: String,
    pub q: usize,
    pub r: usize,
    pub exact: bool,
    pub size: usize,
    /// Sum of the orbit sizes of the unlabelled types.
    pub labelled_count: u64,
    pub meta: CensusMeta,
    pub types: BTreeSet<UnlabelledType>,
}

impl Census {
    pub fn from_labelled(
        engine: Engine,
        ms: &MoveSet,
        q: usize,
        labelled: impl IntoIterator<Item = LabelledType>,
        meta: CensusMeta,
        exact: bool,
    ) -> Census {
        let types: BTreeSet<UnlabelledType> = labelled.into_iter().map(|t| canonical_unlabelled(&t)).collect();
        Census::from_types(engine, ms, q, types, meta, exact)
    }

    pub fn from_types(
        engine: Engine,
        ms: &MoveSet,
        q: usize,
        types: BTreeSet<UnlabelledType>,
        meta: CensusMeta,
        exact: bool,
    ) -> Census {
        let labelled_count = types.iter().map(UnlabelledType::orbit_size).sum();
        Census {
            engine,
            moves: ms.to_string(),
            q,
            r: ms.r(),
            exact,
            size: types.len(),
            labelled_count,
            meta,
            types,
        }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn same_types(&self, other: &Census) -> bool {
        self.types == other.types
    }
}
