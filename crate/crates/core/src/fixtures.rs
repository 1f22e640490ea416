//! Reference maps transcribed from published drawings, shipped as semmap files.

use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::face_type::FaceSeqType;
use crate::format::parse_map;
use crate::map::{PolyhedralMap, SurfaceName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("UnknownFixture {0}")]
    UnknownFixture(String),
}

/// Which classification result a fixture witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureRole {
    /// One of the maps with at most 15 vertices.
    Small,
    /// One of the additional maps with 16 to 20 vertices.
    Medium,
    /// An orientable double cover of a non-orientable map.
    Cover,
}

#[derive(Debug, Clone)]
pub struct FixtureEntry {
    pub id: &'static str,
    pub payload: &'static str,
    pub face_sequence: FaceSeqType,
    pub surface: SurfaceName,
    pub n: usize,
    pub role: FixtureRole,
    pub provenance: String,
}

impl FixtureEntry {
    pub fn load(&self) -> PolyhedralMap {
        parse_map(self.payload).unwrap_or_else(|e| panic!("fixture {} is invalid: {e}", self.id))
    }
}

#[derive(Deserialize)]
struct Manifest {
    fixtures: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
struct ManifestEntry {
    id: String,
    face_sequence: String,
    surface: SurfaceName,
    vertices: usize,
    role: FixtureRole,
    provenance: String,
}

macro_rules! payloads {
    ($($id:literal),* $(,)?) => {
        &[$(($id, include_str!(concat!("../fixtures/", $id, ".map")))),*]
    };
}

const PAYLOADS: &[(&str, &str)] = payloads![
    "T_1_10__3-3-3-4-4",
    "K_1_10__3-3-3-4-4",
    "T_1_12__3-3-3-4-4",
    "T_2_12__3-3-3-4-4",
    "T_3_12__3-3-3-4-4",
    "K_1_12__3-3-3-4-4",
    "K_2_12__3-3-3-4-4",
    "T_1_14__3-3-3-4-4",
    "T_2_14__3-3-3-4-4",
    "K_1_14__3-3-3-4-4",
    "K_1_12__3-3-4-3-4",
    "T_1_18__3-4-6-4",
    "K_1_18__3-4-6-4",
    "T_1_20__4-8-8",
    "T_1_18__3-3-3-3-6",
    "T_1_28__3-3-3-4-4",
    "T_2_24__3-3-3-4-4",
    "T_1_24__3-3-4-3-4",
    "T_1_20__3-3-3-4-4",
    "T_1_24__3-3-3-4-4",
    "T_1_36__3-4-6-4",
];

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

/// Every fixture, in manifest order.
pub fn fixture_catalog() -> &'static [FixtureEntry] {
    static CATALOG: OnceLock<Vec<FixtureEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let manifest: Manifest = serde_json::from_str(MANIFEST).expect("manifest.json parses");
        manifest
            .fixtures
            .into_iter()
            .map(|e| {
                let &(id, payload) = PAYLOADS
                    .iter()
                    .find(|(id, _)| *id == e.id)
                    .unwrap_or_else(|| panic!("manifest names unknown payload {}", e.id));
                FixtureEntry {
                    id,
                    payload,
                    face_sequence: e.face_sequence.parse().expect("manifest type parses"),
                    surface: e.surface,
                    n: e.vertices,
                    role: e.role,
                    provenance: e.provenance,
                }
            })
            .collect()
    })
}

pub fn fixture(id: &str) -> Result<&'static FixtureEntry, FixtureError> {
    fixture_catalog().iter().find(|e| e.id == id).ok_or_else(|| FixtureError::UnknownFixture(id.to_string()))
}

/// Loads and validates a fixture by id, e.g. `T_1_10__3-3-3-4-4`.
pub fn load_fixture(id: &str) -> Result<PolyhedralMap, FixtureError> {
    fixture(id).map(FixtureEntry::load)
}
