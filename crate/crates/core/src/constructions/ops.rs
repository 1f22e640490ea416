//! Dual, truncation and medial.

use std::collections::HashMap;

use super::ConstructionError;
use crate::map::{validate, PolyhedralMap};

/// Vertices and faces exchanged; the dual face of `v` follows `v`'s fan.
pub fn dual(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let faces: Vec<Vec<usize>> = (0..m.n_vertices()).map(|v| m.fan(v).iter().map(|s| s.face).collect()).collect();
    validate(&faces, m.n_faces()).map_err(ConstructionError::Invalid)
}

/// Vertex ids of the darts `(v, u)` in fan order of `v`.
fn darts(m: &PolyhedralMap) -> HashMap<(usize, usize), usize> {
    let mut ids = HashMap::new();
    for v in 0..m.n_vertices() {
        for s in m.fan(v) {
            let k = ids.len();
            ids.insert((v, s.nbr), k);
        }
    }
    ids
}

/// Cuts off every vertex.
///
/// Each dart `(v, u)` becomes a vertex near `v` on edge `vu`. Every old
/// vertex of degree d leaves a d-gon and every old p-gon becomes a 2p-gon.
pub fn truncate(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let id = darts(m);
    let mut faces: Vec<Vec<usize>> =
        (0..m.n_vertices()).map(|v| m.fan(v).iter().map(|s| id[&(v, s.nbr)]).collect()).collect();
    for f in m.faces() {
        let p = f.len();
        let mut g = Vec::with_capacity(2 * p);
        for i in 0..p {
            g.push(id[&(f[i], f[(i + p - 1) % p])]);
            g.push(id[&(f[i], f[(i + 1) % p])]);
        }
        faces.push(g);
    }
    validate(&faces, id.len()).map_err(ConstructionError::Invalid)
}

/// One vertex per edge; one face per old face and one per old vertex.
pub fn medial(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let e = |a: usize, b: usize| m.edge_id(a, b).expect("edge of map");
    let mut faces: Vec<Vec<usize>> =
        m.faces().iter().map(|f| (0..f.len()).map(|i| e(f[i], f[(i + 1) % f.len()])).collect()).collect();
    for v in 0..m.n_vertices() {
        faces.push(m.fan(v).iter().map(|s| e(v, s.nbr)).collect());
    }
    validate(&faces, m.n_edges()).map_err(ConstructionError::Invalid)
}
