//! Polyhedral maps on closed surfaces.
//!
//! Validation and invariants live in [`map`], isomorphism and canonical forms
//! in [`classify`], the exhaustive search for semi-equivelar maps in
//! [`enumerate`], the grid families and map operators in [`constructions`],
//! and the transcribed reference maps in [`fixtures`].

pub mod classify;
pub mod constructions;
pub mod enumerate;
pub mod face_type;
pub mod fixtures;
pub mod format;
pub mod map;
pub mod poly;

use num_bigint::BigInt;

pub use classify::{
    canonical_form, edge_graph_char_poly, find_isomorphism, homological_systole, CanonicalForm, Isomorphism,
};
pub use face_type::FaceSeqType;
pub use format::{parse_map, serialize};
pub use map::{validate, MapError, PolyhedralMap, SurfaceId, SurfaceName};

/// Exact integer scalar used for characteristic polynomials.
pub type Int = BigInt;
/// Characteristic polynomials of edge graphs.
pub type IntPolynomial = poly::Polynomial<Int>;
/// Dense integer matrix.
pub type IntMatrix = poly::Matrix<Int>;
