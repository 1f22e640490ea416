//! Infinite families: grid series, dual, truncation, subdivisions and covers.

mod cover;
mod grid;
mod ops;
mod subdivide;

pub use cover::{double_cover, verify_covering};
pub use grid::{
    equivelar_series, grid_map, quad_grid_of, triangulate, Family, Grid, GridSurface, SeriesParams, DEFAULT_TWIST,
};
pub use ops::{dual, medial, truncate};
pub use subdivide::{
    build_3464_from_312sq, subdivide_3464_to_346, subdivide_alternate_diagonals, subdivide_layer_diagonals,
    subdivide_to_3636,
};

use thiserror::Error;

use crate::map::{MapError, PolyhedralMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("ParamOutOfRange: {0}")]
    ParamOutOfRange(String),
    #[error("NotGridMap: {0}")]
    NotGridMap(String),
    #[error("ParityError: {0}")]
    ParityError(String),
    #[error("NotTaggedTruncation: {0}")]
    NotTaggedTruncation(String),
    #[error("NoConsistentDiagonalization")]
    NoConsistentDiagonalization,
    #[error("AlreadyOrientable")]
    AlreadyOrientable,
    #[error("WrongType: operator expects type {expected}")]
    WrongType { expected: String },
    #[error("result is not a polyhedral map: {0}")]
    Invalid(MapError),
}

/// A named map operator, as used in operator chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Dual,
    Truncate,
    Medial,
    SubdivideLayerDiagonals,
    SubdivideAlternateDiagonals,
    SubdivideTo3636,
    Build3464,
    Subdivide3464To346,
}

impl Operator {
    pub const ALL: [Operator; 8] = [
        Operator::Dual,
        Operator::Truncate,
        Operator::Medial,
        Operator::SubdivideLayerDiagonals,
        Operator::SubdivideAlternateDiagonals,
        Operator::SubdivideTo3636,
        Operator::Build3464,
        Operator::Subdivide3464To346,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Operator::Dual => "dual",
            Operator::Truncate => "truncate",
            Operator::Medial => "medial",
            Operator::SubdivideLayerDiagonals => "subdivide-layer-diagonals",
            Operator::SubdivideAlternateDiagonals => "subdivide-alternate-diagonals",
            Operator::SubdivideTo3636 => "subdivide-to-3636",
            Operator::Build3464 => "build-3464",
            Operator::Subdivide3464To346 => "subdivide-3464-to-346",
        }
    }

    pub fn apply(&self, m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
        match self {
            Operator::Dual => dual(m),
            Operator::Truncate => truncate(m),
            Operator::Medial => medial(m),
            Operator::SubdivideLayerDiagonals => subdivide_layer_diagonals(m),
            Operator::SubdivideAlternateDiagonals => subdivide_alternate_diagonals(m),
            Operator::SubdivideTo3636 => subdivide_to_3636(m),
            Operator::Build3464 => build_3464_from_312sq(m),
            Operator::Subdivide3464To346 => subdivide_3464_to_346(m),
        }
    }
}

impl std::str::FromStr for Operator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Operator::ALL.into_iter().find(|o| o.name() == s || o.name().replace('-', "_") == s).ok_or_else(|| {
            let names: Vec<&str> = Operator::ALL.iter().map(|o| o.name()).collect();
            format!("unknown operator {s:?}; expected one of {}", names.join(", "))
        })
    }
}

/// Applies operators left to right.
pub fn apply_chain(m: &PolyhedralMap, ops: &[Operator]) -> Result<PolyhedralMap, ConstructionError> {
    ops.iter().try_fold(m.clone(), |acc, op| op.apply(&acc))
}
