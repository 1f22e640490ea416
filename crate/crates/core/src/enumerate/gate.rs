//! Counting arguments that rule out (type, n) pairs before any search.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::face_type::FaceSeqType;

/// Number of faces of each size, plus the edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceCountProfile {
    pub counts: BTreeMap<usize, usize>,
    pub edges: usize,
}

/// Why a vertex count cannot carry a map of the given type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Infeasible {
    /// `n * multiplicity` is not divisible by the face size.
    Divisibility { face_size: usize, numerator: usize },
    /// Odd total of face corners, so no integral edge count.
    EdgeParity { corners: usize },
    /// The closed star of a single vertex already needs more vertices.
    ClosedStar { needed: usize },
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasible::Divisibility { face_size, numerator } => {
                write!(f, "{numerator}/{face_size} faces of size {face_size} is not an integer")
            }
            Infeasible::EdgeParity { corners } => write!(f, "{corners}/2 edges is not an integer"),
            Infeasible::ClosedStar { needed } => write!(f, "a closed vertex star needs {needed} vertices"),
        }
    }
}

/// Face counts forced by the type: each size p occurs `n * mult(p) / p` times.
pub fn face_counts(t: &FaceSeqType, n: usize) -> Result<FaceCountProfile, Infeasible> {
    let mut counts = BTreeMap::new();
    for p in t.distinct_sizes() {
        let numerator = n * t.multiplicity(p);
        if !numerator.is_multiple_of(p) {
            return Err(Infeasible::Divisibility { face_size: p, numerator });
        }
        counts.insert(p, numerator / p);
    }
    let corners = n * t.len();
    if !corners.is_multiple_of(2) {
        return Err(Infeasible::EdgeParity { corners });
    }
    Ok(FaceCountProfile { counts, edges: corners / 2 })
}

/// The faces around vertex 0 laid out with fresh labels 1, 2, ...
///
/// Around a vertex of a polyhedral map two faces meet only in the centre or
/// in an edge through it, so every vertex of this star is distinct.
pub fn closed_star(t: &FaceSeqType) -> Vec<Vec<usize>> {
    let sizes = t.sizes();
    let mut faces = Vec::with_capacity(sizes.len());
    let mut spoke = 1;
    let mut next = 2;
    for (i, &p) in sizes.iter().enumerate() {
        let mut face = vec![0, spoke];
        for _ in 0..p - 3 {
            face.push(next);
            next += 1;
        }
        spoke = if i + 1 == sizes.len() {
            1
        } else {
            next += 1;
            next - 1
        };
        face.push(spoke);
        faces.push(face);
    }
    faces
}

/// Vertex count of the closed star of one vertex.
pub fn closed_star_size(t: &FaceSeqType) -> usize {
    let mut seen: Vec<usize> = closed_star(t).concat();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Why `n` fails, or `None` if it passes both gates.
pub fn gate(t: &FaceSeqType, n: usize) -> Option<Infeasible> {
    if let Err(e) = face_counts(t, n) {
        return Some(e);
    }
    let needed = closed_star_size(t);
    (n < needed).then_some(Infeasible::ClosedStar { needed })
}

/// All `n <= n_max` passing divisibility and the closed-star bound.
pub fn min_vertices_gate(t: &FaceSeqType, n_max: usize) -> Vec<usize> {
    (1..=n_max).filter(|&n| gate(t, n).is_none()).collect()
}
