//! Flag-based relabeling: canonical forms, isomorphisms and automorphisms.
//!
//! A flag is a vertex, one incident edge and one of the two faces on that
//! edge. Starting from a flag, a breadth-first walk that always reads each
//! fan starting at the edge it entered from, in the direction of the
//! entering face, visits vertices in an order fixed by the map structure
//! alone. Renumbering in that order and comparing face lists gives both the
//! canonical form and isomorphism certificates.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::format::serialize_faces;
use crate::map::{face_key, PolyhedralMap};

/// Start of a relabeling walk: vertex, fan position, direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Flag {
    vertex: usize,
    pos: usize,
    forward: bool,
}

/// A vertex bijection `mapping[v]` from a source map onto a target map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub mapping: Vec<usize>,
}

impl Isomorphism {
    /// Checks that the mapping is a bijection carrying faces onto faces.
    pub fn verify(&self, a: &PolyhedralMap, b: &PolyhedralMap) -> bool {
        if a.n_vertices() != b.n_vertices() || self.mapping.len() != a.n_vertices() {
            return false;
        }
        let mut hit = vec![false; b.n_vertices()];
        for &w in &self.mapping {
            if w >= hit.len() || hit[w] {
                return false;
            }
            hit[w] = true;
        }
        let mut image: Vec<Vec<usize>> =
            a.faces().iter().map(|f| face_key(&f.iter().map(|&v| self.mapping[v]).collect::<Vec<_>>())).collect();
        image.sort();
        image == b.canonical_faces()
    }
}

/// Canonical serialization plus the relabeling that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    /// semmap text of the relabeled map.
    pub bytes: Vec<u8>,
    /// `relabeling[v]` is the canonical label of vertex `v`.
    pub relabeling: Vec<usize>,
}

fn flags_at(m: &PolyhedralMap, v: usize) -> impl Iterator<Item = Flag> + '_ {
    (0..m.degree(v)).flat_map(move |pos| [true, false].map(|forward| Flag { vertex: v, pos, forward }))
}

fn all_flags(m: &PolyhedralMap) -> Vec<Flag> {
    (0..m.n_vertices()).flat_map(|v| flags_at(m, v)).collect()
}

/// Vertex order of the walk from `start`, as `label[v]`.
fn walk(m: &PolyhedralMap, start: Flag) -> Vec<usize> {
    let n = m.n_vertices();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    label[start.vertex] = next;
    next += 1;
    let mut queue = VecDeque::from([start]);
    while let Some(Flag { vertex: x, pos, forward }) = queue.pop_front() {
        let fan = m.fan(x);
        let d = fan.len();
        for k in 0..d {
            let (i, face) = if forward {
                let i = (pos + k) % d;
                (i, fan[i].face)
            } else {
                let i = (pos + d - k) % d;
                (i, fan[(i + d - 1) % d].face)
            };
            let z = fan[i].nbr;
            if label[z] != usize::MAX {
                continue;
            }
            label[z] = next;
            next += 1;
            // Orient z's walk: start at x, move into `face`.
            let zf = m.fan(z);
            let j = zf.iter().position(|s| s.nbr == x).expect("symmetric fans");
            let fwd = zf[j].face == face;
            queue.push_back(Flag { vertex: z, pos: j, forward: fwd });
        }
    }
    label
}

/// Comparable code of the map relabeled by `label`.
fn code(m: &PolyhedralMap, label: &[usize]) -> Vec<u32> {
    let mut faces: Vec<Vec<usize>> =
        m.faces().iter().map(|f| face_key(&f.iter().map(|&v| label[v]).collect::<Vec<_>>())).collect();
    faces.sort();
    let mut out = Vec::with_capacity(1 + faces.iter().map(|f| f.len() + 1).sum::<usize>());
    out.push(m.n_vertices() as u32);
    for f in faces {
        out.push(f.len() as u32);
        out.extend(f.into_iter().map(|v| v as u32));
    }
    out
}

fn relabeled_faces(m: &PolyhedralMap, label: &[usize]) -> Vec<Vec<usize>> {
    m.faces().iter().map(|f| f.iter().map(|&v| label[v]).collect()).collect()
}

/// Flags that can possibly correspond to flags at `v`: same degree and fan.
fn compatible(a: &PolyhedralMap, u: usize, b: &PolyhedralMap, v: usize) -> bool {
    a.degree(u) == b.degree(v)
        && crate::face_type::least_rotation_or_reflection(&a.face_sequence(u))
            == crate::face_type::least_rotation_or_reflection(&b.face_sequence(v))
}

const PARALLEL_FLAGS: usize = 512;

/// Lexicographically least relabeled serialization over all start flags.
pub fn canonical_form(m: &PolyhedralMap) -> CanonicalForm {
    let flags = all_flags(m);
    let best = |acc: Option<(Vec<u32>, Vec<usize>)>, cand: (Vec<u32>, Vec<usize>)| match acc {
        Some(a) if a.0 <= cand.0 => Some(a),
        _ => Some(cand),
    };
    let run = |f: &Flag| {
        let label = walk(m, *f);
        (code(m, &label), label)
    };
    let (_, label) = if flags.len() >= PARALLEL_FLAGS {
        flags.par_iter().map(run).reduce_with(|a, b| if a.0 <= b.0 { a } else { b }).expect("map has flags")
    } else {
        flags.iter().map(run).fold(None, best).expect("map has flags")
    };
    let bytes = serialize_faces(m.n_vertices(), &relabeled_faces(m, &label)).into_bytes();
    CanonicalForm { bytes, relabeling: label }
}

fn cheap_invariants_match(a: &PolyhedralMap, b: &PolyhedralMap) -> bool {
    if a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges() || a.n_faces() != b.n_faces() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n_vertices()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n_vertices()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && a.face_size_counts() == b.face_size_counts()
}

/// Finds an isomorphism `a -> b`, optionally forcing `pin.0 -> pin.1`.
///
/// Orientation-reversing correspondences are allowed. Every returned
/// mapping has been checked face by face.
pub fn find_isomorphism(a: &PolyhedralMap, b: &PolyhedralMap, pin: Option<(usize, usize)>) -> Option<Isomorphism> {
    if !cheap_invariants_match(a, b) {
        return None;
    }
    let (ua, vb) = pin.unwrap_or((0, usize::MAX));
    if ua >= a.n_vertices() || (pin.is_some() && vb >= b.n_vertices()) {
        return None;
    }
    let start = Flag { vertex: ua, pos: 0, forward: true };
    let la = walk(a, start);
    let target = code(a, &la);
    let candidates: Vec<usize> = match pin {
        Some(_) => vec![vb],
        None => (0..b.n_vertices()).collect(),
    };
    for v in candidates {
        if !compatible(a, ua, b, v) {
            continue;
        }
        for f in flags_at(b, v) {
            let lb = walk(b, f);
            if code(b, &lb) != target {
                continue;
            }
            let mut inv = vec![0; b.n_vertices()];
            for (w, &l) in lb.iter().enumerate() {
                inv[l] = w;
            }
            let iso = Isomorphism { mapping: la.iter().map(|&l| inv[l]).collect() };
            if iso.verify(a, b) {
                return Some(iso);
            }
        }
    }
    None
}

/// Order of the automorphism group. Automorphisms act freely on flags, so
/// this counts the flags whose walk reproduces the walk from a fixed flag.
pub fn automorphism_group_order(m: &PolyhedralMap) -> usize {
    let target = code(m, &walk(m, Flag { vertex: 0, pos: 0, forward: true }));
    all_flags(m)
        .into_iter()
        .filter(|f| compatible(m, 0, m, f.vertex))
        .filter(|&f| code(m, &walk(m, f)) == target)
        .count()
}

/// True if some automorphism carries vertex 0 to every other vertex.
pub fn is_vertex_transitive(m: &PolyhedralMap) -> bool {
    (0..m.n_vertices()).all(|v| find_isomorphism(m, m, Some((0, v))).is_some())
}
