//! Isomorphism, canonical forms and distinguishing invariants.

mod iso;
mod systole;

pub use iso::{
    automorphism_group_order, canonical_form, find_isomorphism, is_vertex_transitive, CanonicalForm, Isomorphism,
};
pub use systole::{boundary, face_span, homological_systole, EdgeVec, Gf2Span, SystoleError};

use num_bigint::BigInt;

use crate::map::PolyhedralMap;
use crate::poly::{char_poly, lift};
use crate::IntPolynomial;

/// Characteristic polynomial of the 1-skeleton's adjacency matrix.
pub fn edge_graph_char_poly(m: &PolyhedralMap) -> IntPolynomial {
    char_poly(&lift::<BigInt>(&m.adjacency()))
}
